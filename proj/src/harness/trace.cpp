#include "linebot/harness/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "linebot/errors.hpp"

namespace linebot::harness {
namespace {

void put(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  line += buf;
}

double parse_double(const std::string& field, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || *end != '\0') {
    throw IoError("bad CSV number '" + field + "' on row " + std::to_string(row));
  }
  return v;
}

}  // namespace

void write_csv(const Trace& trace, std::ostream& out) {
  out << kCsvHeader << '\n';
  std::string line;
  for (const TraceRecord& r : trace) {
    line.clear();
    for (double v : {r.t_s, r.s_m, r.v_true_mps, r.v_est_mps, r.setpoint_mps, r.duty, r.slope_deg,
                     r.roll_deg, r.pitch_deg, r.yaw_deg}) {
      put(line, v);
      line += ',';
    }
    line += std::to_string(r.encoder_count);
    line += ',';
    put(line, r.grip_margin);
    line += '\n';
    out << line;
  }
}

void write_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(trace, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string to_csv(const Trace& trace) {
  std::ostringstream out;
  write_csv(trace, out);
  return out.str();
}

Trace read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("missing CSV header");
  Trace trace;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 12) throw IoError("expected 12 CSV fields on row " + std::to_string(row));
    TraceRecord r;
    double* doubles[] = {&r.t_s,       &r.s_m,      &r.v_true_mps, &r.v_est_mps, &r.setpoint_mps,
                         &r.duty,      &r.slope_deg, &r.roll_deg,  &r.pitch_deg, &r.yaw_deg};
    for (std::size_t i = 0; i < 10; ++i) *doubles[i] = parse_double(fields[i], row);
    char* end = nullptr;
    r.encoder_count = std::strtoll(fields[10].c_str(), &end, 10);
    if (fields[10].empty() || *end != '\0') throw IoError("bad encoder_count on row " + std::to_string(row));
    r.grip_margin = parse_double(fields[11], row);
    trace.push_back(r);
  }
  return trace;
}

}  // namespace linebot::harness
