#include "linebot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linebot/errors.hpp"

namespace linebot::dynamics {
namespace {

constexpr double kRollingDeadband = 1e-3;  // m/s
constexpr double kTractionEpsilon = 1e-9;  // N

double rolling_sign(double v) {
  if (std::abs(v) < kRollingDeadband) return 0.0;
  return v > 0.0 ? 1.0 : -1.0;
}

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw ContractViolation(std::string(name) + " must be finite and > 0");
  }
}

void require_non_negative(double v, const char* name) {
  if (!(std::isfinite(v) && v >= 0.0)) {
    throw ContractViolation(std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

void validate(const MotorParams& m) {
  require_positive(m.supply_voltage, "supply_voltage");
  require_positive(m.torque_constant, "torque_constant");
  require_positive(m.back_emf_constant, "back_emf_constant");
  require_positive(m.winding_resistance, "winding_resistance");
  require_positive(m.gear_ratio, "gear_ratio");
  require_positive(m.gear_efficiency, "gear_efficiency");
  if (m.gear_efficiency > 1.0) throw ContractViolation("gear_efficiency must be <= 1");
}

void validate(const VehicleParams& p) {
  require_positive(p.mass, "mass");
  require_positive(p.wheel_radius, "wheel_radius");
  require_non_negative(p.viscous_coeff, "viscous_coeff");
  require_non_negative(p.rolling_resist_coeff, "rolling_resist_coeff");
  require_non_negative(p.spring_preload, "spring_preload");
  require_non_negative(p.friction_coeff, "friction_coeff");
}

double motor_torque(double duty, double omega_motor, const MotorParams& m) {
  if (!(std::abs(duty) <= 1.0)) {
    throw ContractViolation("duty must lie in [-1, 1], got " + std::to_string(duty));
  }
  const double current =
      (duty * m.supply_voltage - m.back_emf_constant * omega_motor) / m.winding_resistance;
  return m.gear_efficiency * m.gear_ratio * m.torque_constant * current;
}

double normal_force(const RobotState& state, const line::LineProfile& profile,
                    const VehicleParams& p) {
  const double theta = line::slope_at(profile, state.s);
  return p.spring_preload + p.mass * kGravity * std::cos(theta);
}

RobotState step(const RobotState& state, double duty, const line::LineProfile& profile,
                const VehicleParams& p, const MotorParams& m, double dt) {
  if (!(dt > 0.0)) throw ContractViolation("dt must be > 0");
  if (!std::isfinite(dt) || !std::isfinite(duty) || !std::isfinite(state.s) ||
      !std::isfinite(state.v) || !std::isfinite(state.wheel_angle)) {
    throw NumericFault("non-finite input to dynamics step");
  }

  const double theta = line::slope_at(profile, state.s);
  const double omega_motor = m.gear_ratio * state.v / p.wheel_radius;
  const double drive = motor_torque(duty, omega_motor, m) / p.wheel_radius;
  const double normal = p.spring_preload + p.mass * kGravity * std::cos(theta);
  const double force = drive - p.mass * kGravity * std::sin(theta) - p.viscous_coeff * state.v -
                       p.rolling_resist_coeff * normal * rolling_sign(state.v);

  RobotState next = state;
  next.v = state.v + dt * force / p.mass;
  next.s = state.s + next.v * dt;
  if (next.s <= 0.0 || next.s >= profile.total_arclength) {
    next.s = std::clamp(next.s, 0.0, profile.total_arclength);
    next.v = 0.0;
  }
  next.accel = (next.v - state.v) / dt;
  next.omega = next.v / p.wheel_radius;
  // Wheel rotation follows the actual displacement, including at the stops.
  next.wheel_angle = state.wheel_angle + (next.s - state.s) / p.wheel_radius;
  next.t = state.t + dt;

  if (!std::isfinite(next.v) || !std::isfinite(next.s)) {
    throw NumericFault("dynamics step produced a non-finite state");
  }
  return next;
}

double grip_margin(const RobotState& state, const line::LineProfile& profile,
                   const VehicleParams& p) {
  const double theta = line::slope_at(profile, state.s);
  const double normal = p.spring_preload + p.mass * kGravity * std::cos(theta);
  const double required = p.mass * state.accel + p.mass * kGravity * std::sin(theta) +
                          p.viscous_coeff * state.v +
                          p.rolling_resist_coeff * normal * rolling_sign(state.v);
  const double available = p.friction_coeff * normal;
  if (std::abs(required) < kTractionEpsilon) {
    return std::numeric_limits<double>::infinity();
  }
  return available / std::abs(required);
}

}  // namespace linebot::dynamics
