#include "linebot/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "linebot/errors.hpp"

namespace linebot::sensing {
namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

}  // namespace

void validate(const EncoderSpec& spec) {
  if (!(spec.counts_per_rev_motor > 0.0) || !(spec.gear_ratio > 0.0) ||
      !(spec.wheel_circumference > 0.0)) {
    throw ContractViolation("encoder spec fields must be > 0");
  }
}

std::int64_t quantize(double wheel_angle, const EncoderSpec& spec) {
  const double revs = wheel_angle / (2.0 * std::numbers::pi);
  return static_cast<std::int64_t>(std::floor(revs * spec.counts_per_wheel_rev()));
}

EncoderReading encoder_sample(double wheel_angle_now, double wheel_angle_prev,
                              const EncoderSpec& spec, double dt) {
  if (!(dt > 0.0)) throw ContractViolation("encoder window dt must be > 0");
  EncoderReading r;
  r.cumulative = quantize(wheel_angle_now, spec);
  r.count_delta = r.cumulative - quantize(wheel_angle_prev, spec);
  r.dt = dt;
  return r;
}

double estimate_velocity(const EncoderReading& reading, const EncoderSpec& spec) {
  if (!(reading.dt > 0.0)) throw ContractViolation("encoder window dt must be > 0");
  return static_cast<double>(reading.count_delta) * spec.wheel_circumference /
         (spec.counts_per_rev_motor * spec.gear_ratio * reading.dt);
}

double ImuNoiseModel::attitude_bound_deg() const {
  return std::max(roll_amplitude_deg, yaw_amplitude_deg) + truncation_sigmas * angle_sigma_deg;
}

void validate(const ImuNoiseModel& m) {
  const bool ok = m.angle_sigma_deg >= 0.0 && m.accel_sigma_mps2 >= 0.0 &&
                  m.truncation_sigmas > 0.0 && m.roll_amplitude_deg >= 0.0 &&
                  m.yaw_amplitude_deg >= 0.0 && m.frequency_hz >= 0.0 && m.decay_s > 0.0 &&
                  m.floor_fraction >= 0.0 && m.floor_fraction <= 1.0;
  if (!ok) throw ContractViolation("invalid IMU noise model");
}

ImuReading imu_sample(const dynamics::RobotState& state, const line::LineProfile& profile,
                      const ImuNoiseModel& m, RngStream& rng) {
  const double theta = line::slope_at(profile, state.s);
  const double envelope =
      m.floor_fraction + (1.0 - m.floor_fraction) * std::exp(-state.t / m.decay_s);
  const double phase = 2.0 * std::numbers::pi * m.frequency_hz * state.t;

  // Fixed draw order: roll, pitch, yaw, ax, ay, az.
  auto angle_noise = [&] { return m.angle_sigma_deg * rng.truncated_gaussian(m.truncation_sigmas); };
  auto accel_noise = [&] { return m.accel_sigma_mps2 * rng.truncated_gaussian(m.truncation_sigmas); };

  ImuReading r;
  r.roll = m.roll_amplitude_deg * envelope * std::sin(phase) + angle_noise();
  r.pitch = std::clamp(theta * kDegPerRad + angle_noise(), -90.0, 90.0);
  r.yaw = m.yaw_amplitude_deg * envelope * std::sin(0.6 * phase + 0.5 * std::numbers::pi) +
          angle_noise();

  // Specific force in the body frame: along-track acceleration plus gravity
  // projected through pitch and roll.
  const double g = dynamics::kGravity;
  const double roll_rad = r.roll / kDegPerRad;
  r.accel[0] = state.accel + g * std::sin(theta) + accel_noise();
  r.accel[1] = g * std::cos(theta) * std::sin(roll_rad) + accel_noise();
  r.accel[2] = g * std::cos(theta) * std::cos(roll_rad) + accel_noise();
  return r;
}

}  // namespace linebot::sensing
