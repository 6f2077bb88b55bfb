#pragma once

#include <array>
#include <cstdint>

#include "linebot/dynamics.hpp"
#include "linebot/line_model.hpp"
#include "linebot/rng.hpp"

namespace linebot::sensing {

// Quadrature encoder on the motor shaft, read out at the wheel through the
// gearbox. The default is a 48 CPR encoder behind a 34:1 reduction, i.e.
// 1632 counts per wheel revolution.
struct EncoderSpec {
  double counts_per_rev_motor = 48.0;  // C_pr
  double gear_ratio = 34.0;            // n
  double wheel_circumference = 0.21991148575128552;  // m, C (2*pi*0.035)

  double counts_per_wheel_rev() const { return counts_per_rev_motor * gear_ratio; }
};

void validate(const EncoderSpec& spec);

struct EncoderReading {
  std::int64_t count_delta = 0;  // C_nt, counts over the window
  std::int64_t cumulative = 0;   // counts since the encoder was zeroed
  double dt = 0.0;               // d_t, window length in seconds
};

// Counter value for an absolute wheel angle: floor(angle / 2pi * C_pr * n).
std::int64_t quantize(double wheel_angle, const EncoderSpec& spec);

// Reading over one window. Quantization happens on absolute angle, so
// consecutive deltas telescope and no counts are lost between windows.
EncoderReading encoder_sample(double wheel_angle_now, double wheel_angle_prev,
                              const EncoderSpec& spec, double dt);

// v = C_nt * C / (C_pr * n * d_t). Throws ContractViolation if dt <= 0.
double estimate_velocity(const EncoderReading& reading, const EncoderSpec& spec);

// Stateful wrapper used by the simulation loop.
class Encoder {
 public:
  explicit Encoder(EncoderSpec spec, double initial_angle = 0.0)
      : spec_(spec), prev_angle_(initial_angle) {}

  EncoderReading sample(double wheel_angle, double dt) {
    EncoderReading r = encoder_sample(wheel_angle, prev_angle_, spec_, dt);
    prev_angle_ = wheel_angle;
    return r;
  }

  const EncoderSpec& spec() const { return spec_; }

 private:
  EncoderSpec spec_;
  double prev_angle_;
};

// Noise and lateral-perturbation parameters for the simulated 9-DOF IMU.
// Roll and yaw have no first-principles model; they are an oscillation whose
// envelope decays from amplitude toward floor_fraction * amplitude.
struct ImuNoiseModel {
  double angle_sigma_deg = 0.5;
  double accel_sigma_mps2 = 0.05;
  double truncation_sigmas = 3.0;
  double roll_amplitude_deg = 8.0;
  double yaw_amplitude_deg = 8.0;
  double frequency_hz = 0.5;
  double decay_s = 8.0;
  double floor_fraction = 0.3;

  // Largest |roll| or |yaw| the model can emit.
  double attitude_bound_deg() const;
};

void validate(const ImuNoiseModel& model);

struct ImuReading {
  double roll = 0.0;   // deg
  double pitch = 0.0;  // deg
  double yaw = 0.0;    // deg
  std::array<double, 3> accel{};  // m/s^2, body frame (x along track, z cable normal)
};

ImuReading imu_sample(const dynamics::RobotState& state, const line::LineProfile& profile,
                      const ImuNoiseModel& noise, RngStream& rng);

}  // namespace linebot::sensing
