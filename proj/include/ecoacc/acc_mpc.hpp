#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ecoacc/signal_corridor.hpp"
#include "ecoacc/vehicle_model.hpp"

namespace ecoacc {

struct MpcConfig {
  int N_p = 25;
  double t_s = 0.2;
  double W_v = 1.0;
  double W_u = 1e-5;
  double W_du = 1e-3;
  double W_phi = 1e3;
  // Linear slack weight; makes the yellow-light softening exact (phi = 0 whenever stopping is possible).
  double W_phi_linear = 1e5;
  double d_min = 5.0;
  // Extra clearance on every hard distance constraint (m).
  double margin = 0.01;
  // Also penalize u(0) - u_prev; the printed jerk sum starts at the second move.
  bool penalize_first_move = false;
  // Weight of the elastic variable that detects infeasible hard constraints.
  double elastic_penalty = 1e7;
  double infeasibility_tol = 1e-5;

  void validate() const;
};

struct FrontPrediction {
  std::vector<double> v_f;
};

enum class PredictionMode { constant, worst_case };

/// Front speed over the horizon: constant hold, or braking at |a_dec| clamped at 0.
FrontPrediction predict_front(double v_f, int N_p, PredictionMode mode = PredictionMode::constant,
                              double a_dec = 0.0, double t_s = 0.0);

enum class MpcStatus { optimal, feasible_suboptimal, infeasible_safety_fallback };

const char* to_string(MpcStatus s);

struct MpcCostTerms {
  double tracking = 0.0;
  double input = 0.0;
  double jerk = 0.0;
  double slack = 0.0;
  double total() const { return tracking + input + jerk + slack; }
};

struct MpcSolution {
  std::vector<double> torque;     // N_p entries (N*m)
  std::vector<AccState> states;   // N_p + 1 predicted states
  std::vector<double> slack;      // N_p entries (m), nonzero only under yellow
  MpcCostTerms terms;
  double cost = 0.0;
  MpcStatus status = MpcStatus::optimal;
  int iterations = 0;

  double first_torque() const { return torque.front(); }
  double max_slack() const;
};

// Braking-reachability sets. Stopping distance S(v) is exact for the Euler
// model braking at constant decrement h = b * t_s per step:
// S(v) = t_s * ((n + 1) v - h n (n + 1) / 2), n = floor(v / h).
// S is convex piecewise linear, S = max_n (slope_n v + intercept_n).
struct TerminalSets {
  double b = 0.0;    // braking authority used for the sets (m/s^2, positive)
  double t_s = 0.0;
  double h = 0.0;    // speed decrement per step
  double d_min = 0.0;
  double margin = 0.0;
  std::vector<std::pair<double, double>> pieces;  // (slope, intercept)

  double stopping_distance(double v) const;
  // C_TL: d_TL >= S(v)
  bool in_C_TL(double d_TL, double v) const;
  // C_f: d_f >= d_min + max(0, S(v) - S(v_f))
  bool in_C_f(double d_f, double v, double v_f) const;
};

/// Continuous-time braking distance v^2 / (2 b).
double continuous_braking_distance(double v, double b);

/// Sets for the vehicle's maximum braking, reduced by the drag the linear
/// model may under-predict so that they stay invariant for the QP model.
TerminalSets build_terminal_sets(const VehicleParams& p, const MpcConfig& cfg);
/// Sets for an explicit braking authority (positive m/s^2).
TerminalSets build_terminal_sets(double b, double v_max, const MpcConfig& cfg);

/// Braking authority assumed for front vehicles and used by the sets.
double effective_braking(const VehicleParams& p);

MpcSolution solve_mpc(const VehicleParams& p, const MpcConfig& cfg, const AccState& x, const PhaseState& phase,
                      double v_ref, const FrontPrediction& front, double u_prev);
MpcSolution solve_mpc(const VehicleParams& p, const MpcConfig& cfg, const TerminalSets& sets, const AccState& x,
                      const PhaseState& phase, double v_ref, const FrontPrediction& front, double u_prev);

MpcConfig mpc_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MpcConfig& cfg);

}  // namespace ecoacc
