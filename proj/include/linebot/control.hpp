#pragma once

// Discrete PID velocity regulator:
//
//   u = kp * e + ki * sum(e * dt) + kd * (e - e_prev) / dt
//
// The integral is accumulated with the rectangle rule and clamped so that
// ki * integral stays within [out_min, out_max]. The derivative acts on the
// error and is zero on the first step after construction or reset.

namespace linebot::control {

struct PidGains {
  double kp = 0.0;  // duty per m/s
  double ki = 0.0;  // duty per m
  double kd = 0.0;  // duty * s per m
};

// Gain set tuned on the physical robot.
inline constexpr PidGains kLabGains{30.0, 1.0, 0.1};
// Softer gains that keep the actuator out of saturation in normal operation.
inline constexpr PidGains kDeskGains{8.0, 4.0, 0.0};

struct PidState {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral = 0.0;    // accumulated error * seconds
  double prev_error = 0.0;  // m/s
  double out_min = -1.0;
  double out_max = 1.0;
  bool initialized = false;
};

// Throws ContractViolation on negative / non-finite gains or out_min >= out_max.
PidState make_pid(PidGains gains, double out_min = -1.0, double out_max = 1.0);

struct PidOutput {
  double duty = 0.0;  // clamped to [out_min, out_max]
  double raw = 0.0;   // unclamped kp*e + ki*I + kd*D
  PidState state;
  bool fault = false;  // measurement was non-finite; duty forced to 0
};

// Throws ContractViolation if dt <= 0.
PidOutput pid_step(const PidState& pid, double setpoint, double measured, double dt);

PidState reset(const PidState& pid);

// Replaces the gains, keeping the integral (re-clamped for the new ki).
// Throws ContractViolation for negative or non-finite gains.
PidState set_gains(const PidState& pid, double kp, double ki, double kd);

// Rounds duty to the nearest multiple of 1/levels (8-bit PWM: levels = 255).
// levels == 0 leaves duty continuous.
double quantize_duty(double duty, int levels);

}  // namespace linebot::control
