#pragma once

#include <cstdint>
#include <vector>

#include "linebot/control.hpp"
#include "linebot/dynamics.hpp"
#include "linebot/harness/config.hpp"
#include "linebot/harness/trace.hpp"
#include "linebot/line_model.hpp"
#include "linebot/rng.hpp"
#include "linebot/sensing.hpp"
#include "linebot/telemetry/frame.hpp"
#include "linebot/telemetry/link.hpp"

namespace linebot::harness {

// Fixed-step closed-loop simulation. Each call to advance() performs one
// control period:
//
//   1. uplink commands due at this time are applied (and ACKed)
//   2. encoder and IMU are sampled, the PID computes a duty
//   3. the trace record and telemetry frame for this step are produced
//   4. physics integrates period / physics_dt substeps with that duty
//
// Time is kept as an integer step count; t = step * period.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config);

  // Sends a command frame over the uplink at the current step's time.
  void submit_command(telemetry::Frame frame);

  struct StepOutput {
    TraceRecord record;
    std::vector<telemetry::Frame> downlink;  // frames reaching the ground this step
  };

  // Throws NumericFault (naming the record index) if the state goes non-finite.
  StepOutput advance();

  std::int64_t step_index() const { return step_; }
  double time_s() const { return static_cast<double>(step_) * config_.control.period_s; }
  const dynamics::RobotState& state() const { return state_; }
  const control::PidState& pid() const { return pid_; }
  double setpoint() const { return setpoint_; }
  bool estopped() const { return estopped_; }
  const line::LineProfile& profile() const { return profile_; }
  const ScenarioConfig& config() const { return config_; }

 private:
  telemetry::Frame apply_command(const telemetry::Frame& frame);

  ScenarioConfig config_;
  line::LineProfile profile_;
  sensing::EncoderSpec encoder_spec_;
  sensing::Encoder encoder_;
  RngStream imu_rng_;
  telemetry::LossyLink uplink_;
  telemetry::LossyLink downlink_;
  telemetry::SequenceCounter robot_seq_;
  control::PidState pid_;
  dynamics::RobotState state_;
  std::vector<telemetry::Frame> pending_uplink_;
  double setpoint_;
  bool estopped_ = false;
  std::int64_t step_ = 0;
};

// Runs the whole scenario, applying config.commands at their scheduled steps.
Trace run(const ScenarioConfig& config);

}  // namespace linebot::harness
