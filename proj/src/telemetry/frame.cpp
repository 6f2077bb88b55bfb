#include "linebot/telemetry/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linebot/errors.hpp"
#include "linebot/telemetry/crc16.hpp"

namespace linebot::telemetry {
namespace {

constexpr std::size_t kMaxPayload = 18;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  void i16(std::int16_t v) { u16(static_cast<std::uint16_t>(v)); }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint8_t u8() { return in_[pos_++]; }
  std::uint16_t u16() {
    const auto hi = u8();
    return static_cast<std::uint16_t>((hi << 8) | u8());
  }
  std::uint32_t u32() {
    const std::uint32_t hi = u16();
    return (hi << 16) | u16();
  }
  std::int16_t i16() { return static_cast<std::int16_t>(u16()); }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void expect(const Frame& f, FrameType type) {
  if (f.type != type) throw EncodeError("frame has unexpected type");
  if (f.payload.size() != *payload_size(static_cast<std::uint8_t>(type))) {
    throw EncodeError("payload length does not match frame type");
  }
}

std::uint16_t read_be16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

}  // namespace

std::optional<std::size_t> payload_size(std::uint8_t type) {
  switch (static_cast<FrameType>(type)) {
    case FrameType::kTelemetry: return 18;
    case FrameType::kSetSetpoint: return 2;
    case FrameType::kSetGains: return 12;
    case FrameType::kAck: return 2;
    case FrameType::kEstop: return 0;
  }
  return std::nullopt;
}

bool is_command(FrameType type) {
  return type == FrameType::kSetSetpoint || type == FrameType::kSetGains ||
         type == FrameType::kEstop;
}

std::int16_t to_i16(double v) {
  if (std::isnan(v)) return 0;
  const double r = std::round(v);
  return static_cast<std::int16_t>(std::clamp(r, -32768.0, 32767.0));
}

std::int32_t to_i32(double v) {
  if (std::isnan(v)) return 0;
  const double r = std::round(v);
  return static_cast<std::int32_t>(std::clamp(r, -2147483648.0, 2147483647.0));
}

Frame make_telemetry(std::uint8_t seq, const TelemetryPayload& p) {
  Writer w;
  w.u32(p.timestamp_ms);
  w.i16(p.velocity_mm_s);
  w.i16(p.duty_permil);
  w.i16(p.roll_cdeg);
  w.i16(p.pitch_cdeg);
  w.i16(p.yaw_cdeg);
  w.i32(p.encoder_cumulative);
  return Frame{FrameType::kTelemetry, seq, w.take()};
}

Frame make_setpoint(std::uint8_t seq, const SetpointPayload& p) {
  Writer w;
  w.i16(p.velocity_mm_s);
  return Frame{FrameType::kSetSetpoint, seq, w.take()};
}

Frame make_gains(std::uint8_t seq, const GainsPayload& p) {
  Writer w;
  w.i32(p.kp_milli);
  w.i32(p.ki_milli);
  w.i32(p.kd_milli);
  return Frame{FrameType::kSetGains, seq, w.take()};
}

Frame make_ack(std::uint8_t seq, const AckPayload& p) {
  Writer w;
  w.u8(p.acked_seq);
  w.u8(static_cast<std::uint8_t>(p.status));
  return Frame{FrameType::kAck, seq, w.take()};
}

Frame make_estop(std::uint8_t seq) { return Frame{FrameType::kEstop, seq, {}}; }

TelemetryPayload telemetry_of(const Frame& f) {
  expect(f, FrameType::kTelemetry);
  Reader r(f.payload);
  TelemetryPayload p;
  p.timestamp_ms = r.u32();
  p.velocity_mm_s = r.i16();
  p.duty_permil = r.i16();
  p.roll_cdeg = r.i16();
  p.pitch_cdeg = r.i16();
  p.yaw_cdeg = r.i16();
  p.encoder_cumulative = r.i32();
  return p;
}

SetpointPayload setpoint_of(const Frame& f) {
  expect(f, FrameType::kSetSetpoint);
  Reader r(f.payload);
  return SetpointPayload{r.i16()};
}

GainsPayload gains_of(const Frame& f) {
  expect(f, FrameType::kSetGains);
  Reader r(f.payload);
  GainsPayload p;
  p.kp_milli = r.i32();
  p.ki_milli = r.i32();
  p.kd_milli = r.i32();
  return p;
}

AckPayload ack_of(const Frame& f) {
  expect(f, FrameType::kAck);
  Reader r(f.payload);
  AckPayload p;
  p.acked_seq = r.u8();
  p.status = static_cast<AckStatus>(r.u8());
  return p;
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  const auto size = payload_size(static_cast<std::uint8_t>(frame.type));
  if (!size) throw EncodeError("unknown frame type");
  if (frame.payload.size() != *size) {
    throw EncodeError("payload length " + std::to_string(frame.payload.size()) +
                      " does not match frame type (expected " + std::to_string(*size) + ")");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kOverhead + frame.payload.size());
  out.push_back(kStartByte);
  const auto len = static_cast<std::uint16_t>(2 + frame.payload.size());
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.push_back(static_cast<std::uint8_t>(len));
  out.push_back(static_cast<std::uint8_t>(frame.type));
  out.push_back(frame.seq);
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  const std::uint16_t crc = crc16(std::span(out).subspan(kHeaderSize));
  out.push_back(static_cast<std::uint8_t>(crc >> 8));
  out.push_back(static_cast<std::uint8_t>(crc));
  return out;
}

DecodeResult decode_stream(std::span<const std::uint8_t> buf) {
  DecodeResult result;
  const std::size_t n = buf.size();
  std::size_t i = 0;
  auto keep_from = [&](std::size_t p) {
    result.remainder.assign(buf.begin() + static_cast<std::ptrdiff_t>(p), buf.end());
  };

  while (i < n) {
    const auto it = std::find(buf.begin() + static_cast<std::ptrdiff_t>(i), buf.end(), kStartByte);
    if (it == buf.end()) break;
    const auto p = static_cast<std::size_t>(it - buf.begin());

    if (n - p < kHeaderSize) {
      keep_from(p);
      return result;
    }
    const std::size_t len = read_be16(buf, p + 1);
    if (len < 2 || len > 2 + kMaxPayload) {
      ++result.errors;
      i = p + 1;
      continue;
    }
    if (n - p < kHeaderSize + 1) {
      keep_from(p);
      return result;
    }
    const std::uint8_t type = buf[p + 3];
    const auto size = payload_size(type);
    if (!size || len != 2 + *size) {
      ++result.errors;
      i = p + 1;
      continue;
    }
    const std::size_t total = kHeaderSize + len + 2;
    if (n - p < total) {
      keep_from(p);
      return result;
    }
    const auto body = buf.subspan(p + kHeaderSize, len);
    if (crc16(body) != read_be16(buf, p + kHeaderSize + len)) {
      ++result.errors;
      i = p + 1;
      continue;
    }
    result.frames.push_back(Frame{static_cast<FrameType>(type), body[1],
                                  std::vector<std::uint8_t>(body.begin() + 2, body.end())});
    i = p + total;
  }
  return result;
}

std::vector<Frame> StreamDecoder::feed(std::span<const std::uint8_t> chunk) {
  pending_.insert(pending_.end(), chunk.begin(), chunk.end());
  DecodeResult r = decode_stream(pending_);
  errors_ += r.errors;
  pending_ = std::move(r.remainder);
  return std::move(r.frames);
}

}  // namespace linebot::telemetry
