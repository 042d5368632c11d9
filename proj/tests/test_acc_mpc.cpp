#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ecoacc/acc_mpc.hpp"
#include "ecoacc/errors.hpp"
#include "oracles.hpp"

using namespace ecoacc;

namespace {

const PhaseState kGreen{Phase::green, 1e9};
const PhaseState kRed{Phase::red, 30.0};
const PhaseState kYellow{Phase::yellow, 3.0};

double jerk_sum(const MpcSolution& s) {
  double j = 0.0;
  for (std::size_t l = 1; l < s.torque.size(); ++l) j += std::pow(s.torque[l] - s.torque[l - 1], 2);
  return j;
}

}  // namespace

TEST(PredictFront, ConstantHold) {
  const FrontPrediction f = predict_front(10.0, 10);
  ASSERT_EQ(f.v_f.size(), 10u);
  for (double v : f.v_f) EXPECT_EQ(v, 10.0);
  for (double v : predict_front(0.0, 10).v_f) EXPECT_EQ(v, 0.0);
}

TEST(PredictFront, WorstCaseBraking) {
  const FrontPrediction f = predict_front(10.0, 25, PredictionMode::worst_case, -3.0, 0.2);
  EXPECT_NEAR(f.v_f[0], 10.0, 1e-12);
  EXPECT_NEAR(f.v_f[1], 9.4, 1e-12);
  EXPECT_NEAR(f.v_f[2], 8.8, 1e-12);
  EXPECT_EQ(f.v_f.back(), 0.0);
  for (std::size_t l = 1; l < f.v_f.size(); ++l) EXPECT_LE(f.v_f[l], f.v_f[l - 1]);
}

TEST(TerminalSets, ContinuousBrakingDistance) {
  EXPECT_DOUBLE_EQ(continuous_braking_distance(12.0, 3.0), oracle::kBrakeDist_b3_v12);
  EXPECT_THROW(continuous_braking_distance(12.0, 0.0), BoundsError);
}

TEST(TerminalSets, StoppingDistanceMatchesSimulation) {
  MpcConfig cfg;
  const TerminalSets sets = build_terminal_sets(3.0, 15.0, cfg);
  for (double v0 = 0.0; v0 <= 15.0; v0 += 0.37) {
    double v = v0, d = 0.0;
    while (v > 0.0) {
      d += cfg.t_s * v;
      v = std::max(0.0, v - 3.0 * cfg.t_s);
    }
    EXPECT_NEAR(sets.stopping_distance(v0), d, 1e-9) << v0;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : sets.pieces) best = std::max(best, a * v0 + b);
    if (v0 > 0.0) {
      EXPECT_NEAR(best, d, 1e-9) << v0;
    }
  }
  // Finer sampling approaches the continuous v^2/(2b).
  cfg.t_s = 1e-4;
  EXPECT_NEAR(build_terminal_sets(3.0, 15.0, cfg).stopping_distance(12.0), 24.0, 0.01);
}

TEST(TerminalSets, Membership) {
  VehicleParams p;
  MpcConfig cfg;
  const TerminalSets sets = build_terminal_sets(p, cfg);
  EXPECT_TRUE(sets.in_C_TL(0.0, 0.0));
  EXPECT_TRUE(sets.in_C_f(cfg.d_min, 0.0, 0.0));
  EXPECT_FALSE(sets.in_C_TL(sets.stopping_distance(p.v_max) - 0.5, p.v_max));
  EXPECT_FALSE(sets.in_C_f(cfg.d_min - 0.1, 0.0, 0.0));
  EXPECT_TRUE(sets.in_C_f(cfg.d_min, 10.0, 12.0));
}

TEST(TerminalSets, MaxBrakingKeepsStatesInside) {
  VehicleParams p;
  MpcConfig cfg;
  const TerminalSets sets = build_terminal_sets(p, cfg);
  const double h = sets.h;
  for (double v = 0.0; v <= p.v_max; v += 0.25) {
    for (double extra = 0.0; extra < 20.0; extra += 0.7) {
      const AccState x{sets.stopping_distance(v) + extra, 0.0, v};
      const AccState nx = step_time(p, x, p.T_w_min, 0.0, cfg.t_s);
      EXPECT_TRUE(sets.in_C_TL(nx.d_TL, nx.v)) << v << " " << extra;
      for (double vf = 0.0; vf <= p.v_max; vf += 1.5) {
        const double gap = cfg.d_min + std::max(0.0, sets.stopping_distance(v) - sets.stopping_distance(vf)) + extra;
        const AccState y{1e4, gap, v};
        const AccState ny = step_time(p, y, p.T_w_min, vf, cfg.t_s);
        const double vf_next = std::max(0.0, vf - h);
        EXPECT_TRUE(sets.in_C_f(ny.d_f, ny.v, vf_next)) << v << " " << vf << " " << extra;
      }
    }
  }
}

TEST(SolveMpc, HoldingTorqueWithoutObstacles) {
  VehicleParams p;
  MpcConfig cfg;
  cfg.W_u = 0.0;
  cfg.W_du = 0.0;
  const AccState x{1e4, 1e4, 10.0};
  const MpcSolution s = solve_mpc(p, cfg, x, kGreen, 10.0, predict_front(15.0, cfg.N_p), 0.0);
  EXPECT_NE(s.status, MpcStatus::infeasible_safety_fallback);
  for (double T : s.torque) EXPECT_NEAR(T, oracle::kHoldingTorque_v10, 0.05);
  EXPECT_LT(s.cost, 1e-6);
}

TEST(SolveMpc, RedLightAtBrakingDistance) {
  VehicleParams p;
  MpcConfig cfg;
  const TerminalSets sets = build_terminal_sets(p, cfg);
  const double v = 12.0;
  const AccState x{sets.stopping_distance(v) + cfg.margin, 1e4, v};
  const MpcSolution s = solve_mpc(p, cfg, sets, x, kRed, 12.0, predict_front(15.0, cfg.N_p), 0.0);
  ASSERT_NE(s.status, MpcStatus::infeasible_safety_fallback);
  EXPECT_LT(s.first_torque(), 0.0);
  for (const AccState& st : s.states) EXPECT_GE(st.d_TL, -1e-6);
  EXPECT_TRUE(sets.in_C_TL(s.states.back().d_TL + 1e-6, s.states.back().v));
  for (double T : s.torque) {
    EXPECT_GE(T, p.T_w_min);
    EXPECT_LE(T, p.T_w_max);
  }
}

TEST(SolveMpc, TwoStepGridSearch) {
  VehicleParams p;
  MpcConfig cfg;
  cfg.N_p = 2;
  const AccState x{1e4, 1e4, 8.0};
  const double v_ref = 12.0;
  const MpcSolution s = solve_mpc(p, cfg, x, kGreen, v_ref, predict_front(15.0, 2), 0.0);
  ASSERT_NE(s.status, MpcStatus::infeasible_safety_fallback);

  // Drag linearized at the measured speed.
  const double k = 0.5 * p.rho * p.A * p.C_d;
  auto next = [&](double v, double T) {
    const double drag = k * (x.v * x.v + 2.0 * x.v * (v - x.v));
    return v + cfg.t_s / p.m * (T / p.R_w - p.m * p.g * p.C_r1 - drag);
  };
  auto cost = [&](double u0, double u1) {
    const double v1 = next(x.v, u0);
    const double v2 = next(v1, u1);
    return cfg.W_v * (std::pow(x.v - v_ref, 2) + std::pow(v1 - v_ref, 2) + std::pow(v2 - v_ref, 2)) +
           cfg.W_u * (u0 * u0 + u1 * u1) + cfg.W_du * std::pow(u1 - u0, 2);
  };
  double best = std::numeric_limits<double>::infinity();
  for (double u0 = p.T_w_min; u0 <= p.T_w_max; u0 += 2.0)
    for (double u1 = p.T_w_min; u1 <= p.T_w_max; u1 += 2.0) best = std::min(best, cost(u0, u1));
  EXPECT_NEAR(s.cost, best, 0.01 * best);
  EXPECT_NEAR(cost(s.torque[0], s.torque[1]), s.cost, 1e-6 * best);
}

TEST(SolveMpc, SlackOnlyUnderYellow) {
  VehicleParams p;
  MpcConfig cfg;
  const TerminalSets sets = build_terminal_sets(p, cfg);
  const AccState far{sets.stopping_distance(12.0) + 3.0, 1e4, 12.0};
  for (const PhaseState& ph : {kGreen, kRed, kYellow}) {
    const MpcSolution s = solve_mpc(p, cfg, sets, far, ph, 12.0, predict_front(15.0, cfg.N_p), 0.0);
    ASSERT_NE(s.status, MpcStatus::infeasible_safety_fallback);
    EXPECT_LT(s.max_slack(), 1e-6);
  }
  // Too close to stop: crossing on yellow uses slack instead of failing.
  const AccState close{4.0, 1e4, 12.0};
  const MpcSolution y = solve_mpc(p, cfg, sets, close, kYellow, 12.0, predict_front(15.0, cfg.N_p), 0.0);
  EXPECT_NE(y.status, MpcStatus::infeasible_safety_fallback);
  EXPECT_GT(y.max_slack(), 0.0);
}

TEST(SolveMpc, InfeasibleFallsBackToMaxBraking) {
  VehicleParams p;
  MpcConfig cfg;
  const AccState x{2.0, 1e4, 15.0};
  const MpcSolution s = solve_mpc(p, cfg, x, kRed, 15.0, predict_front(15.0, cfg.N_p), 0.0);
  EXPECT_EQ(s.status, MpcStatus::infeasible_safety_fallback);
  for (double T : s.torque) EXPECT_EQ(T, p.T_w_min);
  EXPECT_EQ(s.states.size(), static_cast<std::size_t>(cfg.N_p + 1));
}

TEST(SolveMpc, FollowsSlowerLeaderSafely) {
  VehicleParams p;
  MpcConfig cfg;
  const TerminalSets sets = build_terminal_sets(p, cfg);
  const AccState x{1e4, 20.0, 14.0};
  const MpcSolution s = solve_mpc(p, cfg, sets, x, kGreen, 15.0, predict_front(8.0, cfg.N_p), 0.0);
  ASSERT_NE(s.status, MpcStatus::infeasible_safety_fallback);
  for (const AccState& st : s.states) EXPECT_GE(st.d_f, cfg.d_min - 1e-6);
  EXPECT_TRUE(sets.in_C_f(s.states.back().d_f + 1e-6, s.states.back().v, 8.0));
}

TEST(SolveMpc, JerkWeightMonotone) {
  VehicleParams p;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const AccState x{1e4, 30.0 + 60.0 * U(rng), 3.0 + 10.0 * U(rng)};
    const double v_ref = 15.0 * U(rng);
    const FrontPrediction f = predict_front(5.0 + 10.0 * U(rng), 25);
    double prev = std::numeric_limits<double>::infinity();
    for (double w : {1e-4, 1e-3, 1e-2, 1e-1}) {
      MpcConfig cfg;
      cfg.W_du = w;
      const MpcSolution s = solve_mpc(p, cfg, x, kGreen, v_ref, f, 0.0);
      ASSERT_NE(s.status, MpcStatus::infeasible_safety_fallback);
      const double j = jerk_sum(s);
      EXPECT_LE(j, prev * (1.0 + 1e-4) + 1e-3) << trial << " " << w;
      prev = j;
    }
  }
}

TEST(SolveMpc, RejectsBadInputs) {
  VehicleParams p;
  MpcConfig cfg;
  const FrontPrediction f = predict_front(10.0, cfg.N_p);
  EXPECT_THROW(solve_mpc(p, cfg, {10.0, 10.0, 5.0}, kGreen, p.v_max + 1.0, f, 0.0), BoundsError);
  EXPECT_THROW(solve_mpc(p, cfg, {10.0, 10.0, -1.0}, kGreen, 5.0, f, 0.0), BoundsError);
  cfg.N_p = 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.N_p = 25;
  cfg.W_phi = 0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(MpcConfigJson, RoundTrip) {
  MpcConfig cfg;
  cfg.N_p = 17;
  cfg.W_du = 0.25;
  cfg.penalize_first_move = true;
  const MpcConfig back = mpc_config_from_json(to_json(cfg));
  EXPECT_EQ(back.N_p, 17);
  EXPECT_EQ(back.W_du, 0.25);
  EXPECT_TRUE(back.penalize_first_move);
  EXPECT_THROW(mpc_config_from_json(nlohmann::json{{"N_p", "x"}}), ConfigError);
}
