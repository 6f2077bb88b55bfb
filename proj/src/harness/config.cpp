#include "linebot/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "linebot/errors.hpp"
#include "linebot/rng.hpp"
#include "linebot/telemetry/json_codec.hpp"

namespace linebot::harness {
namespace {

using nlohmann::json;

// Reads known keys out of one JSON object and rejects the rest.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError("'" + path_ + "' must be an object");
  }

  void number(const char* key, double& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) throw ConfigError("'" + qualified(key) + "' must be a number");
    out = v->get<double>();
    if (!std::isfinite(out)) throw ConfigError("'" + qualified(key) + "' must be finite");
  }

  void number(const char* key, std::optional<double>& out) {
    double v = 0.0;
    if (!obj_.contains(key)) return;
    number(key, v);
    out = v;
  }

  void integer(const char* key, int& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer()) throw ConfigError("'" + qualified(key) + "' must be an integer");
    out = v->get<int>();
  }

  bool seed(const char* key, std::uint64_t& out) {
    const json* v = take(key);
    if (!v) return false;
    if (v->is_number_unsigned()) {
      out = v->get<std::uint64_t>();
    } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
      out = static_cast<std::uint64_t>(v->get<std::int64_t>());
    } else {
      throw ConfigError("'" + qualified(key) + "' must be a non-negative integer");
    }
    return true;
  }

  void string(const char* key, std::string& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) throw ConfigError("'" + qualified(key) + "' must be a string");
    out = v->get<std::string>();
  }

  const json* take(const char* key) {
    const auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  void done() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.contains(item.key())) {
        throw ConfigError("unknown key '" + qualified(item.key()) + "'");
      }
    }
  }

  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
void section(Fields& top, const char* name, Fn&& fn) {
  if (const json* obj = top.take(name)) {
    Fields f(*obj, name);
    fn(f);
    f.done();
  }
}

bool is_multiple(double value, double unit, std::int64_t* count) {
  const double ratio = value / unit;
  const auto n = std::llround(ratio);
  if (n <= 0) return false;
  if (std::abs(static_cast<double>(n) * unit - value) > 1e-9 * value) return false;
  *count = n;
  return true;
}

void parse_commands(const json& list, ScenarioConfig& cfg) {
  if (!list.is_array()) throw ConfigError("'commands' must be an array");
  telemetry::SequenceCounter seq;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& item = list[i];
    const std::string path = "commands[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("t_s") || !item["t_s"].is_number()) {
      throw ConfigError("'" + path + "' needs a numeric 't_s'");
    }
    const double t = item["t_s"].get<double>();
    json body = item;
    body.erase("t_s");
    std::string error;
    auto frame = telemetry::command_from_json(body.dump(), seq.next(), &error);
    if (!frame) throw ConfigError("'" + path + "': " + error);
    for (const auto& kv : body.items()) {
      static const std::set<std::string> known{"type", "seq", "v_mm_s", "kp_m", "ki_m", "kd_m"};
      if (!known.contains(kv.key())) {
        throw ConfigError("unknown key '" + path + "." + kv.key() + "'");
      }
    }
    if (!(t >= 0.0)) throw ConfigError("'" + path + ".t_s' must be >= 0");
    cfg.commands.push_back({std::llround(t / cfg.control.period_s), *frame});
  }
  std::stable_sort(cfg.commands.begin(), cfg.commands.end(),
                   [](const auto& a, const auto& b) { return a.step < b.step; });
}

}  // namespace

line::LineProfile ScenarioConfig::line_profile() const {
  return line::solve_catenary(line.span_m, line.sag_m, line.support_height_m);
}

sensing::EncoderSpec ScenarioConfig::encoder_spec() const {
  sensing::EncoderSpec spec;
  spec.counts_per_rev_motor = encoder.cpr;
  spec.gear_ratio = encoder.gear_ratio;
  spec.wheel_circumference =
      encoder.wheel_circumference_m.value_or(2.0 * std::numbers::pi * vehicle.wheel_radius);
  return spec;
}

std::int64_t ScenarioConfig::physics_substeps() const {
  return std::llround(control.period_s / sim.physics_dt_s);
}

std::int64_t ScenarioConfig::total_steps() const {
  return std::llround(sim.duration_s / control.period_s);
}

std::uint64_t ScenarioConfig::imu_seed() const {
  return imu.seed.value_or(RngStream::derive_seed(sim.seed, "imu"));
}

void validate(const ScenarioConfig& c) {
  try {
    const auto profile = c.line_profile();
    if (!(c.line.cable_diameter_mm > 0.0)) throw ConfigError("line.cable_diameter_mm must be > 0");
    dynamics::validate(c.vehicle);
    dynamics::validate(c.motor);
    sensing::validate(c.encoder_spec());
    sensing::validate(c.imu.model);
    control::make_pid({c.control.kp, c.control.ki, c.control.kd}, c.control.out_min,
                      c.control.out_max);
    if (c.control.out_min < -1.0 || c.control.out_max > 1.0) {
      throw ConfigError("control output limits must lie within [-1, 1]");
    }
    if (c.control.pwm_levels < 0) throw ConfigError("control.pwm_levels must be >= 0");
    if (!(c.link.drop_prob >= 0.0 && c.link.drop_prob <= 1.0)) {
      throw ConfigError("link.drop_prob must lie in [0, 1]");
    }
    if (!(c.link.latency_s >= 0.0)) throw ConfigError("link.latency_s must be >= 0");
    if (c.telemetry.decimation < 1) throw ConfigError("telemetry.decimation must be >= 1");
    if (!(c.control.period_s > 0.0)) throw ConfigError("control.period_s must be > 0");
    if (!(c.sim.physics_dt_s > 0.0)) throw ConfigError("sim.physics_dt_s must be > 0");
    if (!(c.sim.duration_s > 0.0)) throw ConfigError("sim.duration_s must be > 0");
    std::int64_t n = 0;
    if (!is_multiple(c.control.period_s, c.sim.physics_dt_s, &n)) {
      throw ConfigError("sim.physics_dt_s must divide control.period_s exactly");
    }
    if (!is_multiple(c.sim.duration_s, c.control.period_s, &n)) {
      throw ConfigError("sim.duration_s must be a whole number of control periods");
    }
    if (!(c.initial.s_m >= 0.0 && c.initial.s_m <= profile.total_arclength)) {
      throw ConfigError("initial.s_m must lie on the line [0, " +
                        std::to_string(profile.total_arclength) + "]");
    }
    if (!std::isfinite(c.initial.v_mps)) throw ConfigError("initial.v_mps must be finite");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ScenarioConfig load_config(std::string_view text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config is not valid JSON");

  ScenarioConfig c;
  Fields top(doc, "");
  top.string("name", c.name);
  top.string("description", c.description);

  section(top, "line", [&](Fields& f) {
    f.number("span_m", c.line.span_m);
    f.number("sag_m", c.line.sag_m);
    f.number("support_height_m", c.line.support_height_m);
    f.number("cable_diameter_mm", c.line.cable_diameter_mm);
  });
  section(top, "vehicle", [&](Fields& f) {
    f.number("mass_kg", c.vehicle.mass);
    f.number("wheel_radius_m", c.vehicle.wheel_radius);
    f.number("viscous_coeff", c.vehicle.viscous_coeff);
    f.number("rolling_resist_coeff", c.vehicle.rolling_resist_coeff);
    f.number("spring_preload_n", c.vehicle.spring_preload);
    f.number("friction_coeff", c.vehicle.friction_coeff);
  });
  section(top, "motor", [&](Fields& f) {
    f.number("supply_voltage_v", c.motor.supply_voltage);
    f.number("torque_constant", c.motor.torque_constant);
    f.number("back_emf_constant", c.motor.back_emf_constant);
    f.number("winding_resistance_ohm", c.motor.winding_resistance);
    f.number("gear_efficiency", c.motor.gear_efficiency);
  });
  section(top, "encoder", [&](Fields& f) {
    f.number("cpr", c.encoder.cpr);
    f.number("gear_ratio", c.encoder.gear_ratio);
    f.number("wheel_circumference_m", c.encoder.wheel_circumference_m);
  });
  c.motor.gear_ratio = c.encoder.gear_ratio;
  section(top, "control", [&](Fields& f) {
    f.number("kp", c.control.kp);
    f.number("ki", c.control.ki);
    f.number("kd", c.control.kd);
    f.number("setpoint_mps", c.control.setpoint_mps);
    f.number("period_s", c.control.period_s);
    f.number("out_min", c.control.out_min);
    f.number("out_max", c.control.out_max);
    f.integer("pwm_levels", c.control.pwm_levels);
  });
  section(top, "imu", [&](Fields& f) {
    auto& m = c.imu.model;
    f.number("angle_sigma_deg", m.angle_sigma_deg);
    f.number("accel_sigma_mps2", m.accel_sigma_mps2);
    f.number("truncation_sigmas", m.truncation_sigmas);
    f.number("roll_amplitude_deg", m.roll_amplitude_deg);
    f.number("yaw_amplitude_deg", m.yaw_amplitude_deg);
    f.number("frequency_hz", m.frequency_hz);
    f.number("decay_s", m.decay_s);
    f.number("floor_fraction", m.floor_fraction);
    std::uint64_t seed = 0;
    if (f.seed("seed", seed)) c.imu.seed = seed;
  });
  section(top, "link", [&](Fields& f) {
    f.number("drop_prob", c.link.drop_prob);
    f.number("latency_s", c.link.latency_s);
  });
  section(top, "telemetry", [&](Fields& f) { f.integer("decimation", c.telemetry.decimation); });
  bool have_seed = false;
  bool have_duration = false;
  section(top, "sim", [&](Fields& f) {
    have_duration = f.take("duration_s") != nullptr;
    f.number("duration_s", c.sim.duration_s);
    f.number("physics_dt_s", c.sim.physics_dt_s);
    have_seed = f.seed("seed", c.sim.seed);
  });
  if (!have_seed) throw ConfigError("missing required key 'sim.seed'");
  if (!have_duration) throw ConfigError("missing required key 'sim.duration_s'");
  section(top, "initial", [&](Fields& f) {
    f.number("s_m", c.initial.s_m);
    f.number("v_mps", c.initial.v_mps);
  });
  const json* cmds = top.take("commands");
  top.done();
  validate(c);
  // Commands are placed on control steps, so they need a validated period.
  if (cmds) parse_commands(*cmds, c);
  return c;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

void set_duration(ScenarioConfig& config, double duration_s) {
  config.sim.duration_s = duration_s;
  validate(config);
}

}  // namespace linebot::harness
