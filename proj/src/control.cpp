#include "linebot/control.hpp"

#include <algorithm>
#include <cmath>

#include "linebot/errors.hpp"

namespace linebot::control {
namespace {

bool valid_gain(double g) { return std::isfinite(g) && g >= 0.0; }

double clamp_integral(double integral, const PidState& pid) {
  if (pid.ki <= 0.0) return integral;
  return std::clamp(integral, pid.out_min / pid.ki, pid.out_max / pid.ki);
}

}  // namespace

PidState make_pid(PidGains gains, double out_min, double out_max) {
  if (!(std::isfinite(out_min) && std::isfinite(out_max) && out_min < out_max)) {
    throw ContractViolation("PID output limits must satisfy out_min < out_max");
  }
  PidState pid;
  pid.out_min = out_min;
  pid.out_max = out_max;
  return set_gains(pid, gains.kp, gains.ki, gains.kd);
}

PidOutput pid_step(const PidState& pid, double setpoint, double measured, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("PID dt must be > 0");

  PidOutput out;
  out.state = pid;
  if (!std::isfinite(measured) || !std::isfinite(setpoint)) {
    out.fault = true;
    return out;
  }

  const double error = setpoint - measured;
  PidState& next = out.state;
  next.integral = clamp_integral(pid.integral + error * dt, pid);
  const double derivative = pid.initialized ? (error - pid.prev_error) / dt : 0.0;
  next.prev_error = error;
  next.initialized = true;

  out.raw = pid.kp * error + pid.ki * next.integral + pid.kd * derivative;
  out.duty = std::clamp(out.raw, pid.out_min, pid.out_max);
  return out;
}

PidState reset(const PidState& pid) {
  PidState next = pid;
  next.integral = 0.0;
  next.prev_error = 0.0;
  next.initialized = false;
  return next;
}

PidState set_gains(const PidState& pid, double kp, double ki, double kd) {
  if (!valid_gain(kp) || !valid_gain(ki) || !valid_gain(kd)) {
    throw ContractViolation("PID gains must be finite and >= 0");
  }
  PidState next = pid;
  next.kp = kp;
  next.ki = ki;
  next.kd = kd;
  next.integral = clamp_integral(next.integral, next);
  return next;
}

double quantize_duty(double duty, int levels) {
  if (levels <= 0) return duty;
  return std::round(duty * levels) / levels;
}

}  // namespace linebot::control
