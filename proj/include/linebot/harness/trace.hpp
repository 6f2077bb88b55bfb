#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace linebot::harness {

// One row per control step.
struct TraceRecord {
  double t_s = 0.0;
  double s_m = 0.0;
  double v_true_mps = 0.0;
  double v_est_mps = 0.0;
  double setpoint_mps = 0.0;
  double duty = 0.0;
  double slope_deg = 0.0;
  double roll_deg = 0.0;
  double pitch_deg = 0.0;
  double yaw_deg = 0.0;
  std::int64_t encoder_count = 0;
  double grip_margin = 0.0;  // +inf when no traction is required

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using Trace = std::vector<TraceRecord>;

inline constexpr const char* kCsvHeader =
    "t_s,s_m,v_true_mps,v_est_mps,setpoint_mps,duty,slope_deg,roll_deg,pitch_deg,yaw_deg,"
    "encoder_count,grip_margin";

// Values use 6 significant digits (%.6g); encoder_count is an exact integer.
// Lines end in LF.
void write_csv(const Trace& trace, std::ostream& out);
void write_csv(const Trace& trace, const std::filesystem::path& path);
std::string to_csv(const Trace& trace);

// Parses CSV produced by write_csv. Throws IoError on malformed input.
Trace read_csv(std::istream& in);

}  // namespace linebot::harness
