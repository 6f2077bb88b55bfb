#include "linebot/sensing.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "linebot/errors.hpp"

namespace linebot::sensing {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(EncoderSpec, DefaultConfigurationHas1632CountsPerRev) {
  EXPECT_EQ(EncoderSpec{}.counts_per_wheel_rev(), 1632.0);
}

TEST(EncoderSample, OneRevolution) {
  const auto r = encoder_sample(kTwoPi, 0.0, EncoderSpec{}, 0.02);
  EXPECT_EQ(r.count_delta, 1632);
  EXPECT_EQ(r.cumulative, 1632);
  EXPECT_EQ(r.dt, 0.02);
}

TEST(EncoderSample, HalfRevolutionAndReverse) {
  EXPECT_EQ(encoder_sample(std::numbers::pi, 0.0, EncoderSpec{}, 0.02).count_delta, 816);
  EXPECT_EQ(encoder_sample(0.0, std::numbers::pi, EncoderSpec{}, 0.02).count_delta, -816);
}

TEST(EncoderSample, ResidualCarriesIntoNextWindow) {
  const EncoderSpec spec;
  const double per_count = kTwoPi / spec.counts_per_wheel_rev();
  Encoder enc(spec);
  // 1.9999 counts of rotation: floor gives one count now...
  const auto first = enc.sample(1.9999 * per_count, 0.02);
  EXPECT_EQ(first.count_delta, 1);
  // ...and the 0.9999 left over completes a count with a tiny further move.
  const auto second = enc.sample(2.0001 * per_count, 0.02);
  EXPECT_EQ(second.count_delta, 1);
  EXPECT_EQ(second.cumulative, 2);
}

TEST(EncoderSample, CountsAreConservedAcrossAnyPartition) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(-0.3, 0.5);
  std::uniform_int_distribution<int> split(1, 7);
  const EncoderSpec spec;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> angles{0.0};
    for (int i = 0; i < 200; ++i) angles.push_back(angles.back() + step(rng));
    Encoder enc(spec);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < angles.size();) {
      i = std::min(angles.size() - 1, i + static_cast<std::size_t>(split(rng)));
      sum += enc.sample(angles[i], 0.02).count_delta;
      if (i == angles.size() - 1) break;
    }
    ASSERT_EQ(sum, quantize(angles.back(), spec) - quantize(angles.front(), spec));
  }
}

TEST(EstimateVelocity, Examples) {
  const EncoderSpec spec;
  EXPECT_EQ(estimate_velocity({0, 0, 0.02}, spec), 0.0);

  EncoderSpec c02 = spec;
  c02.wheel_circumference = 0.2;
  EXPECT_DOUBLE_EQ(estimate_velocity({1632, 1632, 1.0}, c02), 0.2);

  EncoderSpec c022 = spec;
  c022.wheel_circumference = 0.22;
  EXPECT_DOUBLE_EQ(estimate_velocity({816, 816, 0.5}, c022), 816 * 0.22 / (1632 * 0.5));
  EXPECT_DOUBLE_EQ(estimate_velocity({816, 816, 0.5}, c022), 0.22);
  EXPECT_DOUBLE_EQ(estimate_velocity({-816, -816, 0.5}, c022), -0.22);
}

TEST(EstimateVelocity, RejectsNonPositiveWindow) {
  EXPECT_THROW(estimate_velocity({1, 1, 0.0}, EncoderSpec{}), ContractViolation);
  EXPECT_THROW(estimate_velocity({1, 1, -0.02}, EncoderSpec{}), ContractViolation);
  EXPECT_THROW(encoder_sample(1.0, 0.0, EncoderSpec{}, 0.0), ContractViolation);
}

TEST(EstimateVelocity, LinearInCountsInverseInWindow) {
  const EncoderSpec spec;
  for (std::int64_t c : {1, 7, 100, 1632, -45}) {
    const double v = estimate_velocity({c, c, 0.02}, spec);
    EXPECT_EQ(estimate_velocity({2 * c, 2 * c, 0.02}, spec), 2 * v);
    EXPECT_EQ(estimate_velocity({c, c, 0.04}, spec), v / 2);
    EXPECT_NEAR(estimate_velocity({3 * c, 3 * c, 0.02}, spec), 3 * v, 1e-15 * std::abs(v) * 3);
  }
}

TEST(EstimateVelocity, WithinOneCountOfTrueMeanVelocity) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> speed(-1.0, 1.0);
  const EncoderSpec spec;
  const double r = spec.wheel_circumference / kTwoPi;
  const double dt = 0.02;
  const double bound = spec.wheel_circumference / (spec.counts_per_wheel_rev() * dt);
  for (int trial = 0; trial < 1000; ++trial) {
    Encoder enc(spec);
    double angle = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double before = angle;
      for (int i = 0; i < 20; ++i) angle += speed(rng) / r * 1e-3;
      const double true_mean = (angle - before) * r / dt;
      const double est = estimate_velocity(enc.sample(angle, dt), spec);
      ASSERT_LE(std::abs(est - true_mean), bound * (1 + 1e-12));
    }
  }
}

const line::LineProfile kSagged = line::solve_catenary(10.0, 0.5, 2.0);

ImuNoiseModel quiet() {
  ImuNoiseModel m;
  m.angle_sigma_deg = 0.0;
  m.accel_sigma_mps2 = 0.0;
  m.roll_amplitude_deg = 0.0;
  m.yaw_amplitude_deg = 0.0;
  return m;
}

TEST(ImuSample, PitchFollowsCableSlope) {
  RngStream rng(1);
  dynamics::RobotState mid;
  mid.s = kSagged.total_arclength / 2;
  const auto at_mid = imu_sample(mid, kSagged, quiet(), rng);
  EXPECT_EQ(at_mid.pitch, 0.0);
  EXPECT_EQ(at_mid.roll, 0.0);
  EXPECT_EQ(at_mid.yaw, 0.0);

  dynamics::RobotState start;
  const auto at_start = imu_sample(start, kSagged, quiet(), rng);
  EXPECT_NEAR(at_start.pitch, -11.346389397942740, 1e-9);
}

TEST(ImuSample, AccelIsGravityInBodyFrame) {
  RngStream rng(1);
  dynamics::RobotState s;
  s.s = kSagged.total_arclength / 2;
  auto r = imu_sample(s, kSagged, quiet(), rng);
  EXPECT_NEAR(r.accel[0], 0.0, 1e-12);
  EXPECT_NEAR(r.accel[1], 0.0, 1e-12);
  EXPECT_NEAR(r.accel[2], dynamics::kGravity, 1e-12);
  s.s = 0.0;
  s.accel = 0.5;
  r = imu_sample(s, kSagged, quiet(), rng);
  const double theta = line::slope_at(kSagged, 0.0);
  EXPECT_NEAR(r.accel[0], 0.5 + dynamics::kGravity * std::sin(theta), 1e-12);
  EXPECT_NEAR(r.accel[2], dynamics::kGravity * std::cos(theta), 1e-12);
}

TEST(ImuSample, SameSeedSameReading) {
  dynamics::RobotState s;
  s.s = 3.0;
  s.t = 1.3;
  RngStream a(42), b(42), c(43);
  const auto ra = imu_sample(s, kSagged, ImuNoiseModel{}, a);
  const auto rb = imu_sample(s, kSagged, ImuNoiseModel{}, b);
  const auto rc = imu_sample(s, kSagged, ImuNoiseModel{}, c);
  EXPECT_EQ(ra.roll, rb.roll);
  EXPECT_EQ(ra.pitch, rb.pitch);
  EXPECT_EQ(ra.yaw, rb.yaw);
  EXPECT_EQ(ra.accel, rb.accel);
  EXPECT_NE(ra.roll, rc.roll);
}

TEST(ImuSample, DefaultRollYawStayWithinTenDegrees) {
  const ImuNoiseModel m;
  EXPECT_LE(m.attitude_bound_deg(), 10.0);
  RngStream rng(7);
  dynamics::RobotState s;
  for (int k = 0; k < 100000; ++k) {
    s.t = k * 0.02;
    s.s = std::fmod(k * 0.004, kSagged.total_arclength);
    const auto r = imu_sample(s, kSagged, m, rng);
    ASSERT_LE(std::abs(r.roll), 10.0);
    ASSERT_LE(std::abs(r.yaw), 10.0);
    ASSERT_LE(std::abs(r.pitch), 90.0);
  }
}

TEST(ImuSample, NoiseIsZeroMeanWithConfiguredSigma) {
  ImuNoiseModel m = quiet();
  m.angle_sigma_deg = 0.5;
  RngStream rng(3);
  dynamics::RobotState s;
  s.s = kSagged.total_arclength / 2;
  double sum = 0, sum2 = 0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double x = imu_sample(s, kSagged, m, rng).roll;
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  // Truncation at 3 sigma shrinks the standard deviation by ~1.3 %.
  EXPECT_NEAR(std::sqrt(sum2 / n - mean * mean), 0.5 * 0.9866, 0.01);
}

}  // namespace
}  // namespace linebot::sensing
