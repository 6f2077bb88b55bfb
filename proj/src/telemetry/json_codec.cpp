#include "linebot/telemetry/json_codec.hpp"

#include <limits>

namespace linebot::telemetry {
namespace {

using nlohmann::json;

template <typename T>
bool read_int(const json& obj, const char* key, T* out, std::string* error) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    if (error) *error = std::string("missing or non-integer field '") + key + "'";
    return false;
  }
  const auto v = it->get<std::int64_t>();
  if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max()) {
    if (error) *error = std::string("field '") + key + "' out of range";
    return false;
  }
  *out = static_cast<T>(v);
  return true;
}

}  // namespace

json frame_to_json(const Frame& frame) {
  json j;
  j["seq"] = frame.seq;
  switch (frame.type) {
    case FrameType::kTelemetry: {
      const auto p = telemetry_of(frame);
      j["type"] = "telemetry";
      j["t_ms"] = p.timestamp_ms;
      j["v_mm_s"] = p.velocity_mm_s;
      j["duty_pm"] = p.duty_permil;
      j["roll_cd"] = p.roll_cdeg;
      j["pitch_cd"] = p.pitch_cdeg;
      j["yaw_cd"] = p.yaw_cdeg;
      j["enc"] = p.encoder_cumulative;
      break;
    }
    case FrameType::kSetSetpoint:
      j["type"] = "set_setpoint";
      j["v_mm_s"] = setpoint_of(frame).velocity_mm_s;
      break;
    case FrameType::kSetGains: {
      const auto g = gains_of(frame);
      j["type"] = "set_gains";
      j["kp_m"] = g.kp_milli;
      j["ki_m"] = g.ki_milli;
      j["kd_m"] = g.kd_milli;
      break;
    }
    case FrameType::kAck: {
      const auto a = ack_of(frame);
      j["type"] = "ack";
      j["acked_seq"] = a.acked_seq;
      j["status"] = static_cast<int>(a.status);
      break;
    }
    case FrameType::kEstop:
      j["type"] = "estop";
      break;
  }
  return j;
}

std::optional<std::uint8_t> command_seq(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (!j.is_object()) return std::nullopt;
  std::uint8_t seq = 0;
  if (!read_int(j, "seq", &seq, nullptr)) return std::nullopt;
  return seq;
}

std::optional<Frame> command_from_json(const std::string& text, std::uint8_t default_seq,
                                       std::string* error) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    if (error) *error = "not a JSON object";
    return std::nullopt;
  }
  const auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) {
    if (error) *error = "missing 'type'";
    return std::nullopt;
  }
  std::uint8_t seq = default_seq;
  if (j.contains("seq") && !read_int(j, "seq", &seq, error)) return std::nullopt;

  const auto type = type_it->get<std::string>();
  if (type == "set_setpoint") {
    SetpointPayload p;
    if (!read_int(j, "v_mm_s", &p.velocity_mm_s, error)) return std::nullopt;
    return make_setpoint(seq, p);
  }
  if (type == "set_gains") {
    GainsPayload g;
    if (!read_int(j, "kp_m", &g.kp_milli, error) || !read_int(j, "ki_m", &g.ki_milli, error) ||
        !read_int(j, "kd_m", &g.kd_milli, error)) {
      return std::nullopt;
    }
    return make_gains(seq, g);
  }
  if (type == "estop") return make_estop(seq);
  if (error) *error = "unknown command type '" + type + "'";
  return std::nullopt;
}

}  // namespace linebot::telemetry
