#pragma once

// Scenario configuration. Files are JSON objects; every section and key is
// optional except sim.seed and sim.duration_s. Omitted values take the
// defaults below, which describe the laboratory robot on a 10 m test line.
// Unknown keys are rejected. See docs/config.md for the full schema.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linebot/control.hpp"
#include "linebot/dynamics.hpp"
#include "linebot/line_model.hpp"
#include "linebot/sensing.hpp"
#include "linebot/telemetry/frame.hpp"
#include "linebot/telemetry/link.hpp"

namespace linebot::harness {

struct LineConfig {
  double span_m = 10.0;
  double sag_m = 0.5;
  double support_height_m = 2.0;
  double cable_diameter_mm = 25.0;
};

struct EncoderConfig {
  double cpr = 48.0;
  double gear_ratio = 34.0;
  // Defaults to 2 * pi * vehicle.wheel_radius_m. Setting it differently
  // models a miscalibrated estimator.
  std::optional<double> wheel_circumference_m;
};

struct ControlConfig {
  double kp = control::kLabGains.kp;
  double ki = control::kLabGains.ki;
  double kd = control::kLabGains.kd;
  double setpoint_mps = 0.20;
  double period_s = 0.02;
  double out_min = -1.0;
  double out_max = 1.0;
  int pwm_levels = 0;  // 0 = continuous duty
};

struct ImuConfig {
  sensing::ImuNoiseModel model;
  // Overrides the seed derived from sim.seed for the IMU noise stream.
  std::optional<std::uint64_t> seed;
};

struct LinkConfig {
  double drop_prob = 0.0;
  double latency_s = 0.0;
};

struct TelemetryConfig {
  int decimation = 1;  // emit telemetry every N control steps
};

struct SimConfig {
  double duration_s = 0.0;
  double physics_dt_s = 0.001;
  std::uint64_t seed = 0;
};

struct InitialConfig {
  double s_m = 0.0;
  double v_mps = 0.0;
};

// Command injected on the uplink at a given control step, as if an operator
// had sent it at that sim time.
struct ScriptedCommand {
  std::int64_t step = 0;
  telemetry::Frame frame;
};

struct ScenarioConfig {
  std::string name;
  std::string description;
  LineConfig line;
  dynamics::VehicleParams vehicle;
  dynamics::MotorParams motor;  // gear_ratio mirrors encoder.gear_ratio
  EncoderConfig encoder;
  ControlConfig control;
  ImuConfig imu;
  LinkConfig link;
  TelemetryConfig telemetry;
  SimConfig sim;
  InitialConfig initial;
  std::vector<ScriptedCommand> commands;

  line::LineProfile line_profile() const;
  sensing::EncoderSpec encoder_spec() const;
  std::int64_t physics_substeps() const;  // physics steps per control period
  std::int64_t total_steps() const;       // control steps in duration_s
  std::uint64_t imu_seed() const;
};

// Throws ConfigError naming the offending key or constraint.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

// Re-checks cross-field constraints after programmatic edits (CLI overrides).
void validate(const ScenarioConfig& config);

// Sets duration_s and re-validates.
void set_duration(ScenarioConfig& config, double duration_s);

}  // namespace linebot::harness
