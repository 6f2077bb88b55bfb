#pragma once

// JSON view of the frame protocol used by the WebSocket side of the bridge.
//
// Telemetry:  {"type":"telemetry","seq":N,"t_ms":N,"v_mm_s":N,"duty_pm":N,
//              "roll_cd":N,"pitch_cd":N,"yaw_cd":N,"enc":N}
// Ack:        {"type":"ack","seq":N,"acked_seq":N,"status":N}
// Commands:   {"type":"set_setpoint","v_mm_s":N}
//             {"type":"set_gains","kp_m":N,"ki_m":N,"kd_m":N}
//             {"type":"estop"}
// Commands may carry an optional "seq" (0..255).

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "linebot/telemetry/frame.hpp"

namespace linebot::telemetry {

nlohmann::json frame_to_json(const Frame& frame);

// Parses a command object. Returns the frame on success; on failure returns
// nullopt and fills `error`. A command without "seq" gets `default_seq`.
std::optional<Frame> command_from_json(const std::string& text, std::uint8_t default_seq,
                                       std::string* error = nullptr);

// Seq field of a command text if it parses far enough to have one.
std::optional<std::uint8_t> command_seq(const std::string& text);

}  // namespace linebot::telemetry
