#include "linebot/dynamics.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "linebot/errors.hpp"
#include "oracles.hpp"

namespace linebot::dynamics {
namespace {

const line::LineProfile kFlat = line::solve_catenary(10.0, 0.0, 2.0);
const line::LineProfile kSagged = line::solve_catenary(10.0, 0.5, 2.0);

// Steady speed solving drive(v) = resistances(v) at slope theta, found by
// bisection on the force balance written out from first principles.
double steady_speed(double duty, double theta, const VehicleParams& p, const MotorParams& m) {
  auto net = [&](long double v) {
    const long double omega_motor = m.gear_ratio * v / p.wheel_radius;
    const long double torque = m.gear_efficiency * m.gear_ratio * m.torque_constant *
                               (duty * m.supply_voltage - m.back_emf_constant * omega_motor) /
                               m.winding_resistance;
    const long double normal = p.spring_preload + p.mass * kGravity * std::cos(theta);
    return torque / p.wheel_radius - p.mass * kGravity * std::sin(theta) - p.viscous_coeff * v -
           p.rolling_resist_coeff * normal;
  };
  return static_cast<double>(oracle::bisect(net, 0.0L, 5.0L, 200));
}

RobotState simulate(RobotState s, double duty, const line::LineProfile& profile, double seconds,
                    const VehicleParams& p = {}, const MotorParams& m = {}, double dt = 1e-3) {
  const int n = static_cast<int>(std::lround(seconds / dt));
  for (int i = 0; i < n; ++i) s = step(s, duty, profile, p, m, dt);
  return s;
}

TEST(MotorTorque, Examples) {
  const MotorParams m;
  EXPECT_EQ(motor_torque(0.0, 0.0, m), 0.0);
  const double stall = m.gear_efficiency * m.gear_ratio * m.torque_constant * m.supply_voltage /
                       m.winding_resistance;
  EXPECT_DOUBLE_EQ(motor_torque(1.0, 0.0, m), stall);
  EXPECT_NEAR(motor_torque(1.0, m.supply_voltage / m.back_emf_constant, m), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(motor_torque(-1.0, 0.0, m), -stall);
}

TEST(MotorTorque, DutyOutOfRangeIsContractViolation) {
  EXPECT_THROW(motor_torque(1.0001, 0.0, MotorParams{}), ContractViolation);
  EXPECT_THROW(motor_torque(std::nan(""), 0.0, MotorParams{}), ContractViolation);
}

TEST(Step, RestOnFlatLineOnlyAdvancesTime) {
  RobotState s;
  s.s = 3.0;
  s.wheel_angle = 3.0 / 0.035;
  const RobotState next = step(s, 0.0, kFlat, {}, {}, 1e-3);
  EXPECT_EQ(next.s, s.s);
  EXPECT_EQ(next.v, s.v);
  EXPECT_EQ(next.omega, s.omega);
  EXPECT_EQ(next.wheel_angle, s.wheel_angle);
  EXPECT_EQ(next.accel, 0.0);
  EXPECT_DOUBLE_EQ(next.t, 1e-3);
}

TEST(Step, ConvergesToSteadySpeedOnFlatLine) {
  const VehicleParams p;
  const MotorParams m;
  for (double duty : {0.3, 0.5}) {
    const double expected = steady_speed(duty, 0.0, p, m);
    RobotState s;
    s.s = 0.5;
    // tau = m / (electrical + viscous damping) ~ 0.32 s; run well past 10 tau.
    s = simulate(s, duty, kFlat, 5.0);
    EXPECT_NEAR(s.v / expected, 1.0, 0.01) << "duty " << duty;
  }
  // Frozen values of the balance (mpmath root-find).
  EXPECT_NEAR(steady_speed(0.3, 0.0, p, m), 0.28527934712406979, 1e-9);
  EXPECT_NEAR(steady_speed(0.5, 0.0, p, m), 0.51250825150933683, 1e-9);
}

TEST(Step, AscentLowersSteadySpeed) {
  // Long, gently sagged line: the slope barely changes over a few metres.
  const auto hill = line::solve_catenary(1000.0, 50.0, 100.0);
  const double s0 = 0.8 * hill.total_arclength;
  ASSERT_GT(line::slope_at(hill, s0), 0.05);
  const double duty = 0.8;
  const double flat = steady_speed(duty, 0.0, {}, {});
  RobotState s;
  s.s = s0;
  s.v = flat;
  s = simulate(s, duty, hill, 5.0);
  EXPECT_LT(s.v, flat);
  EXPECT_NEAR(s.v / steady_speed(duty, line::slope_at(hill, s.s), {}, {}), 1.0, 0.01);
}

TEST(Step, SteadySpeedMonotoneInDutyAndSlope) {
  double previous = -1.0;
  for (double duty = 0.2; duty <= 1.0; duty += 0.1) {
    RobotState s;
    s.s = 1.0;
    const double v = simulate(s, duty, kFlat, 4.0).v;
    EXPECT_GE(v, previous);
    previous = v;
  }
  previous = std::numeric_limits<double>::infinity();
  for (double sag : {1.0, 20.0, 50.0, 100.0}) {
    const auto profile = line::solve_catenary(1000.0, sag, 200.0);
    RobotState s;
    s.s = 0.8 * profile.total_arclength;
    const double v = simulate(s, 1.0, profile, 4.0).v;
    EXPECT_LE(v, previous) << "sag " << sag;
    previous = v;
  }
}

TEST(Step, NoSlipCouplingHoldsEveryStep) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> duty(-1.0, 1.0);
  const VehicleParams p;
  RobotState s;
  s.s = 5.0;
  for (int i = 0; i < 20000; ++i) {
    s = step(s, duty(rng), kSagged, p, {}, 1e-3);
    ASSERT_NEAR(s.omega * p.wheel_radius, s.v, 4 * std::numeric_limits<double>::epsilon() * std::abs(s.v));
    ASSERT_GE(s.s, 0.0);
    ASSERT_LE(s.s, kSagged.total_arclength);
  }
}

TEST(Step, EnergyConservedWithoutLosses) {
  VehicleParams p;
  p.viscous_coeff = 0.0;
  p.rolling_resist_coeff = 0.0;
  MotorParams m;
  m.winding_resistance = 1e12;  // open circuit: no back-EMF braking
  auto energy = [&](const RobotState& s) {
    return 0.5 * p.mass * s.v * s.v + p.mass * kGravity * line::height_at_arclength(kSagged, s.s);
  };
  RobotState s;
  s.s = 2.0;
  const double e0 = energy(s);
  double worst = 0.0;
  for (int i = 0; i < 60000; ++i) {
    s = step(s, 0.0, kSagged, p, m, 1e-3);
    worst = std::max(worst, std::abs(energy(s) - e0) / e0);
  }
  EXPECT_LT(worst, 1e-3);
  // It actually swung through the sag.
  EXPECT_GT(std::abs(s.s - 2.0) + std::abs(s.v), 1e-3);
}

TEST(Step, LineEndIsInelasticStop) {
  RobotState s;
  s.s = kFlat.total_arclength - 0.01;
  s.v = 0.5;
  s = simulate(s, 1.0, kFlat, 0.5);
  EXPECT_EQ(s.s, kFlat.total_arclength);
  EXPECT_EQ(s.v, 0.0);
  RobotState back;
  back.s = 0.01;
  back.v = -0.5;
  back = simulate(back, -1.0, kFlat, 0.5);
  EXPECT_EQ(back.s, 0.0);
  EXPECT_EQ(back.v, 0.0);
}

TEST(Step, Contracts) {
  RobotState s;
  s.s = 1.0;
  EXPECT_THROW(step(s, 0.0, kFlat, {}, {}, 0.0), ContractViolation);
  EXPECT_THROW(step(s, 0.0, kFlat, {}, {}, -1e-3), ContractViolation);
  s.v = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(step(s, 0.0, kFlat, {}, {}, 1e-3), NumericFault);
}

TEST(Step, IsBitDeterministic) {
  RobotState a;
  a.s = 4.0;
  a.v = 0.1;
  const RobotState x = step(a, 0.37, kSagged, {}, {}, 1e-3);
  const RobotState y = step(a, 0.37, kSagged, {}, {}, 1e-3);
  EXPECT_EQ(std::memcmp(&x, &y, sizeof x), 0);
}

TEST(GripMargin, InfiniteAtRestOnFlatLine) {
  RobotState s;
  s.s = 5.0;
  EXPECT_TRUE(std::isinf(grip_margin(s, kFlat, {})));
}

TEST(GripMargin, CruiseOnFlatLineHasMargin) {
  RobotState s;
  s.s = 5.0;
  s.v = 0.2;
  // mu (F + m g) / (c v + c_r (F + m g)) with the default parameters.
  EXPECT_NEAR(grip_margin(s, kFlat, {}), 46.551095749473810, 1e-9);
  EXPECT_GT(grip_margin(s, kFlat, {}), 1.0);
}

TEST(GripMargin, ZeroFrictionGivesZero) {
  VehicleParams p;
  p.friction_coeff = 0.0;
  RobotState s;
  s.s = 5.0;
  s.v = 0.2;
  EXPECT_EQ(grip_margin(s, kFlat, p), 0.0);
}

TEST(Params, Validation) {
  VehicleParams p;
  p.mass = 0.0;
  EXPECT_THROW(validate(p), ContractViolation);
  MotorParams m;
  m.gear_efficiency = 1.5;
  EXPECT_THROW(validate(m), ContractViolation);
  EXPECT_NO_THROW(validate(VehicleParams{}));
  EXPECT_NO_THROW(validate(MotorParams{}));
}

}  // namespace
}  // namespace linebot::dynamics
