#pragma once

// Wire format of the command/telemetry link. Every frame is
//
//   0x7E | len:u16 | type:u8 | seq:u8 | payload | crc:u16
//
// with len = 2 + payload length and the CRC taken over type, seq and
// payload. Multi-byte fields are big-endian. There is no byte stuffing; a
// receiver resynchronizes by rescanning for 0x7E after a bad frame.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace linebot::telemetry {

inline constexpr std::uint8_t kStartByte = 0x7E;
inline constexpr std::size_t kHeaderSize = 3;   // start + len
inline constexpr std::size_t kOverhead = 7;     // header + type + seq + crc

enum class FrameType : std::uint8_t {
  kTelemetry = 0x01,
  kSetSetpoint = 0x02,
  kSetGains = 0x03,
  kAck = 0x04,
  kEstop = 0x05,
};

// Fixed payload length for a type, or nullopt for an unknown type byte.
std::optional<std::size_t> payload_size(std::uint8_t type);
bool is_command(FrameType type);

struct Frame {
  FrameType type = FrameType::kEstop;
  std::uint8_t seq = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

enum class AckStatus : std::uint8_t {
  kOk = 0,
  kRejected = 1,   // well-formed command with an invalid value
  kMalformed = 2,  // command could not be parsed
};

struct TelemetryPayload {
  std::uint32_t timestamp_ms = 0;
  std::int16_t velocity_mm_s = 0;
  std::int16_t duty_permil = 0;  // -1000..1000
  std::int16_t roll_cdeg = 0;
  std::int16_t pitch_cdeg = 0;
  std::int16_t yaw_cdeg = 0;
  std::int32_t encoder_cumulative = 0;

  friend bool operator==(const TelemetryPayload&, const TelemetryPayload&) = default;
};

struct SetpointPayload {
  std::int16_t velocity_mm_s = 0;
  friend bool operator==(const SetpointPayload&, const SetpointPayload&) = default;
};

// Gains in milli-units (gain * 1000).
struct GainsPayload {
  std::int32_t kp_milli = 0;
  std::int32_t ki_milli = 0;
  std::int32_t kd_milli = 0;
  friend bool operator==(const GainsPayload&, const GainsPayload&) = default;
};

struct AckPayload {
  std::uint8_t acked_seq = 0;
  AckStatus status = AckStatus::kOk;
  friend bool operator==(const AckPayload&, const AckPayload&) = default;
};

Frame make_telemetry(std::uint8_t seq, const TelemetryPayload& p);
Frame make_setpoint(std::uint8_t seq, const SetpointPayload& p);
Frame make_gains(std::uint8_t seq, const GainsPayload& p);
Frame make_ack(std::uint8_t seq, const AckPayload& p);
Frame make_estop(std::uint8_t seq);

// Payload accessors; throw EncodeError if the frame has another type or a
// payload of the wrong size.
TelemetryPayload telemetry_of(const Frame& f);
SetpointPayload setpoint_of(const Frame& f);
GainsPayload gains_of(const Frame& f);
AckPayload ack_of(const Frame& f);

// Saturating conversions to the fixed-point wire units.
std::int16_t to_i16(double v);
std::int32_t to_i32(double v);

// Throws EncodeError if the payload length does not match the type.
std::vector<std::uint8_t> encode_frame(const Frame& frame);

struct DecodeResult {
  std::vector<Frame> frames;
  std::vector<std::uint8_t> remainder;  // trailing partial frame
  std::size_t errors = 0;               // rejected delimiters
};

DecodeResult decode_stream(std::span<const std::uint8_t> buffer);

// Incremental decoder: feeding a byte stream in arbitrary chunks yields the
// same frames as decoding the concatenation in one go.
class StreamDecoder {
 public:
  std::vector<Frame> feed(std::span<const std::uint8_t> chunk);
  std::size_t errors() const { return errors_; }
  std::size_t buffered() const { return pending_.size(); }

 private:
  std::vector<std::uint8_t> pending_;
  std::size_t errors_ = 0;
};

// Per-sender sequence counter, wrapping mod 256.
class SequenceCounter {
 public:
  std::uint8_t next() { return value_++; }

 private:
  std::uint8_t value_ = 0;
};

}  // namespace linebot::telemetry
