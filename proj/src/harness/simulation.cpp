#include "linebot/harness/simulation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "linebot/errors.hpp"

namespace linebot::harness {
namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

telemetry::LinkModel link_model(const ScenarioConfig& c, const char* direction) {
  return {c.link.drop_prob, c.link.latency_s, RngStream::derive_seed(c.sim.seed, direction)};
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& config)
    : config_(config),
      profile_((validate(config), config.line_profile())),
      encoder_spec_(config.encoder_spec()),
      encoder_(encoder_spec_, config.initial.s_m / config.vehicle.wheel_radius),
      imu_rng_(config.imu_seed()),
      uplink_(link_model(config, "link.up")),
      downlink_(link_model(config, "link.down")),
      pid_(control::make_pid({config.control.kp, config.control.ki, config.control.kd},
                             config.control.out_min, config.control.out_max)),
      setpoint_(config.control.setpoint_mps) {
  state_.s = config.initial.s_m;
  state_.v = config.initial.v_mps;
  state_.omega = state_.v / config.vehicle.wheel_radius;
  state_.wheel_angle = state_.s / config.vehicle.wheel_radius;
}

void Simulation::submit_command(telemetry::Frame frame) {
  pending_uplink_.push_back(std::move(frame));
}

telemetry::Frame Simulation::apply_command(const telemetry::Frame& frame) {
  using telemetry::AckStatus;
  using telemetry::FrameType;
  AckStatus status = AckStatus::kOk;
  switch (frame.type) {
    case FrameType::kSetSetpoint:
      setpoint_ = telemetry::setpoint_of(frame).velocity_mm_s / 1000.0;
      estopped_ = false;
      break;
    case FrameType::kSetGains: {
      const auto g = telemetry::gains_of(frame);
      try {
        pid_ = control::set_gains(pid_, g.kp_milli / 1000.0, g.ki_milli / 1000.0,
                                  g.kd_milli / 1000.0);
      } catch (const ContractViolation&) {
        status = AckStatus::kRejected;
      }
      break;
    }
    case FrameType::kEstop:
      estopped_ = true;
      setpoint_ = 0.0;
      pid_ = control::reset(pid_);
      break;
    default:
      status = AckStatus::kMalformed;
      break;
  }
  return telemetry::make_ack(robot_seq_.next(), {frame.seq, status});
}

Simulation::StepOutput Simulation::advance() {
  const double period = config_.control.period_s;
  const double now = time_s();
  std::vector<telemetry::Frame> outgoing;

  for (const auto& cmd : uplink_.step(now, pending_uplink_)) {
    outgoing.push_back(apply_command(cmd));
  }
  pending_uplink_.clear();

  const auto reading = encoder_.sample(state_.wheel_angle, period);
  const double v_est = sensing::estimate_velocity(reading, encoder_spec_);
  const auto imu = sensing::imu_sample(state_, profile_, config_.imu.model, imu_rng_);

  double duty = 0.0;
  if (estopped_) {
    pid_ = control::reset(pid_);
  } else {
    const auto out = control::pid_step(pid_, setpoint_, v_est, period);
    pid_ = out.state;
    duty = out.fault ? 0.0 : control::quantize_duty(out.duty, config_.control.pwm_levels);
  }

  StepOutput result;
  TraceRecord& r = result.record;
  r.t_s = now;
  r.s_m = state_.s;
  r.v_true_mps = state_.v;
  r.v_est_mps = v_est;
  r.setpoint_mps = setpoint_;
  r.duty = duty;
  r.slope_deg = line::slope_at(profile_, state_.s) * kDegPerRad;
  r.roll_deg = imu.roll;
  r.pitch_deg = imu.pitch;
  r.yaw_deg = imu.yaw;
  r.encoder_count = reading.cumulative;
  r.grip_margin = dynamics::grip_margin(state_, profile_, config_.vehicle);

  if (step_ % config_.telemetry.decimation == 0) {
    telemetry::TelemetryPayload p;
    p.timestamp_ms = static_cast<std::uint32_t>(std::llround(now * 1000.0));
    p.velocity_mm_s = telemetry::to_i16(v_est * 1000.0);
    p.duty_permil = telemetry::to_i16(duty * 1000.0);
    p.roll_cdeg = telemetry::to_i16(imu.roll * 100.0);
    p.pitch_cdeg = telemetry::to_i16(imu.pitch * 100.0);
    p.yaw_cdeg = telemetry::to_i16(imu.yaw * 100.0);
    p.encoder_cumulative = telemetry::to_i32(static_cast<double>(reading.cumulative));
    outgoing.push_back(telemetry::make_telemetry(robot_seq_.next(), p));
  }
  result.downlink = downlink_.step(now, outgoing);

  const std::int64_t substeps = config_.physics_substeps();
  const double dt = config_.sim.physics_dt_s;
  try {
    for (std::int64_t i = 0; i < substeps; ++i) {
      state_ = dynamics::step(state_, duty, profile_, config_.vehicle, config_.motor, dt);
    }
  } catch (const NumericFault& e) {
    throw NumericFault("record " + std::to_string(step_) + ": " + e.what());
  }
  ++step_;
  // Keep sim time on the integer step grid.
  state_.t = time_s();
  return result;
}

Trace run(const ScenarioConfig& config) {
  Simulation sim(config);
  const std::int64_t steps = config.total_steps();
  Trace trace;
  trace.reserve(static_cast<std::size_t>(steps));
  auto next_cmd = config.commands.begin();
  for (std::int64_t k = 0; k < steps; ++k) {
    for (; next_cmd != config.commands.end() && next_cmd->step <= k; ++next_cmd) {
      sim.submit_command(next_cmd->frame);
    }
    trace.push_back(sim.advance().record);
  }
  return trace;
}

}  // namespace linebot::harness
