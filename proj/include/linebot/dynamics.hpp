#pragma once

// Longitudinal quarter-vehicle model of the robot riding the cable. The
// driven wheel does not slip, so wheel speed and ground speed are locked:
// omega * wheel_radius == v.

#include "linebot/line_model.hpp"

namespace linebot::dynamics {

inline constexpr double kGravity = 9.80665;  // m/s^2

struct RobotState {
  double s = 0.0;            // m of arclength from the first support
  double v = 0.0;            // m/s along the cable
  double omega = 0.0;        // rad/s, wheel
  double wheel_angle = 0.0;  // rad, accumulated wheel rotation
  double accel = 0.0;        // m/s^2, along-track acceleration of the last step
  double t = 0.0;            // s
};

struct MotorParams {
  double supply_voltage = 12.0;      // V
  double torque_constant = 0.01;     // N*m/A
  double back_emf_constant = 0.01;   // V*s/rad
  double winding_resistance = 14.0;  // ohm
  double gear_ratio = 34.0;
  double gear_efficiency = 0.85;
};

struct VehicleParams {
  double mass = 2.0;                  // kg
  double wheel_radius = 0.035;        // m
  double viscous_coeff = 0.5;         // N*s/m
  double rolling_resist_coeff = 0.01;
  double spring_preload = 15.0;       // N
  double friction_coeff = 0.6;
};

// Throws ContractViolation if any parameter breaks its positivity invariant.
void validate(const MotorParams& motor);
void validate(const VehicleParams& vehicle);

// Torque at the wheel (after the gearbox) from an ideal H-bridge driving a
// DC motor. omega_motor is the motor-shaft speed (gear_ratio * wheel speed).
double motor_torque(double duty, double omega_motor, const MotorParams& motor);

// Normal force between wheel and cable: spring clamp plus the weight
// component perpendicular to the cable.
double normal_force(const RobotState& state, const line::LineProfile& profile,
                    const VehicleParams& vehicle);

// Advances the state by dt with semi-implicit Euler. Reaching either end of
// the cable is an inelastic stop.
RobotState step(const RobotState& state, double duty, const line::LineProfile& profile,
                 const VehicleParams& vehicle, const MotorParams& motor, double dt);

// Available friction over required traction. Values above 1 mean the no-slip
// assumption holds; +inf when no traction is required.
double grip_margin(const RobotState& state, const line::LineProfile& profile,
                   const VehicleParams& vehicle);

}  // namespace linebot::dynamics
