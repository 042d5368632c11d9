#include <cmath>

#include <gtest/gtest.h>

#include "ecoacc/errors.hpp"
#include "ecoacc/vehicle_model.hpp"
#include "oracles.hpp"

using namespace ecoacc;

TEST(TractionAccel, HandComputedValue) {
  VehicleParams p;
  p.C_r2 = 0.0;
  EXPECT_NEAR(traction_accel(p, 15.0, 300.0), oracle::kTractionAccel_v15_T300, 1e-12);
}

TEST(TractionAccel, RollingResistanceCancels) {
  VehicleParams p;
  const double T = p.m * p.g * p.C_r1 * p.R_w;
  EXPECT_NEAR(traction_accel(p, 0.0, T), 0.0, 1e-12);
}

TEST(TractionAccel, StationaryClamp) {
  VehicleParams p;
  EXPECT_EQ(traction_accel(p, 0.0, 0.0), 0.0);
  EXPECT_EQ(traction_accel(p, 0.0, -500.0), 0.0);
  // Moving vehicles do decelerate with zero torque.
  EXPECT_LT(traction_accel(p, 5.0, 0.0), 0.0);
}

TEST(TractionAccel, TorqueBounds) {
  VehicleParams p;
  EXPECT_THROW(traction_accel(p, 5.0, p.T_w_max + 1.0), BoundsError);
  EXPECT_THROW(traction_accel(p, 5.0, p.T_w_min - 1.0), BoundsError);
  EXPECT_THROW(traction_accel(p, -0.1, 0.0), BoundsError);
}

TEST(TractionAccel, Monotone) {
  VehicleParams p;
  for (double v = 0.5; v < 15.0; v += 0.5) {
    double prev = -1e9;
    for (double T = -2000.0; T <= 2000.0; T += 100.0) {
      const double a = traction_accel(p, v, T);
      EXPECT_GT(a, prev);
      prev = a;
    }
    EXPECT_LT(traction_accel(p, v + 0.5, 200.0), traction_accel(p, v, 200.0));
  }
}

TEST(TractionAccel, GradeTerm) {
  // Grade enters as -g (cos(theta) (C_r1 + C_r2 v) - sin(theta)).
  VehicleParams p;
  const double th = 0.05, v = 10.0, T = 200.0;
  const double expect = T / (p.m * p.R_w) - p.g * (std::cos(th) * (p.C_r1 + p.C_r2 * v) - std::sin(th)) -
                        p.rho * p.A * p.C_d * v * v / (2.0 * p.m);
  EXPECT_NEAR(traction_accel(p, v, T, th), expect, 1e-12);
}

TEST(StepSpace, UnitAcceleration) {
  VehicleParams p;
  // Pick the torque that yields a = 1 at v = 10.
  const double drag = 0.5 * p.rho * p.A * p.C_d * 100.0;
  const double roll = p.m * p.g * (p.C_r1 + p.C_r2 * 10.0);
  const double T = (p.m * 1.0 + drag + roll) * p.R_w;
  ASSERT_NEAR(traction_accel(p, 10.0, T), 1.0, 1e-12);
  const PlanState s = step_space(p, {10.0, 0.0}, T, 10.0);
  EXPECT_NEAR(s.v, 11.0, 1e-12);
  EXPECT_NEAR(s.t, 10.0 / 11.0, 1e-12);
}

TEST(StepSpace, CoastAtEquilibriumAndZeroStep) {
  VehicleParams p;
  const double v = 8.0;
  const double T = (0.5 * p.rho * p.A * p.C_d * v * v + p.m * p.g * (p.C_r1 + p.C_r2 * v)) * p.R_w;
  const PlanState s = step_space(p, {v, 3.0}, T, 10.0);
  EXPECT_NEAR(s.v, v, 1e-12);
  EXPECT_NEAR(s.t, 3.0 + 10.0 / v, 1e-12);
  const PlanState z = step_space(p, {v, 3.0}, 500.0, 0.0);
  EXPECT_EQ(z.v, v);
  EXPECT_EQ(z.t, 3.0);
}

TEST(StepSpace, TooMuchBraking) {
  VehicleParams p;
  EXPECT_THROW(step_space(p, {1.0, 0.0}, p.T_w_min, 10.0), StepInfeasibleError);
}

TEST(StepTime, HoldingTorqueKeepsSpeed) {
  VehicleParams p;
  const double T = resistance_force(p, 10.0) * p.R_w;
  const AccState s = step_time(p, {100.0, 50.0, 10.0}, T, 10.0, 0.2);
  EXPECT_NEAR(s.d_TL, 98.0, 1e-12);
  EXPECT_NEAR(s.d_f, 50.0, 1e-12);
  EXPECT_NEAR(s.v, 10.0, 1e-12);
}

TEST(StepTime, GapKinematicsAndRest) {
  VehicleParams p;
  const AccState s = step_time(p, {100.0, 50.0, 10.0}, 700.0, 12.0, 0.2);
  EXPECT_NEAR(s.d_f, 50.4, 1e-12);
  const AccState r = step_time(p, {30.0, 20.0, 0.0}, 0.0, 0.0, 0.2);
  EXPECT_EQ(r.v, 0.0);
  EXPECT_EQ(r.d_TL, 30.0);
  EXPECT_EQ(r.d_f, 20.0);
  const AccState b = step_time(p, {30.0, 20.0, 0.1}, p.T_w_min, 0.0, 0.2);
  EXPECT_EQ(b.v, 0.0);
}

TEST(Resistance, Values) {
  VehicleParams p;
  EXPECT_NEAR(resistance_force(p, 15.0), oracle::kResistance_v15, 1e-9);
  EXPECT_NEAR(resistance_force(p, 0.0), p.m * p.g * p.C_r1, 1e-12);
  const double d1 = resistance_force(p, 6.0) - resistance_force(p, 0.0);
  const double d2 = resistance_force(p, 12.0) - resistance_force(p, 0.0);
  EXPECT_NEAR(d2, 4.0 * d1, 1e-9);
}

TEST(Braking, Limits) {
  VehicleParams p;
  const BrakingLimits b = braking_limits(p);
  EXPECT_NEAR(b.a_dec_max, oracle::kADecMax, 1e-12);
  EXPECT_NEAR(b.t_stop_max, oracle::kTStopMax, 1e-12);
  VehicleParams q = p;
  q.T_w_min = -4000.0;
  const BrakingLimits c = braking_limits(q);
  EXPECT_LT(c.a_dec_max, b.a_dec_max);
  EXPECT_LT(c.t_stop_max, b.t_stop_max);
}

TEST(Params, Validation) {
  VehicleParams p;
  EXPECT_NO_THROW(p.validate());
  p.m = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  VehicleParams q;
  q.T_w_min = 10.0;
  EXPECT_THROW(q.validate(), ConfigError);
}
