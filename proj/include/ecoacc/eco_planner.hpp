#pragma once

#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ecoacc/signal_corridor.hpp"
#include "ecoacc/vehicle_model.hpp"

namespace ecoacc {

enum class ValueInterpolation {
  bilinear,  // value interpolated in (v, t); the default
  nearest,   // successor snapped to the nearest node; a finite-graph DP
};

struct PlannerConfig {
  double ds = 10.0;
  int N = 260;
  // Time-penalty weight, expressed in multiples of `lambda_unit`
  // (N^2 m^4 s^-2). The stage cost sees lambda * lambda_unit.
  double lambda = 50.0;
  double lambda_unit = 640000.0;
  // Admissible probability of arriving inside the effective red; the
  // crossing margin is the delay quantile F^-1(1 - eta).
  double eta = 0.9;
  double t_f = 400.0;
  int n_v = 31;
  int n_t = 401;
  std::vector<double> torque_grid = default_torque_grid();
  // Extra seconds added to every crossing margin to absorb plant/model timing error.
  double crossing_margin = 0.0;
  ValueInterpolation interpolation = ValueInterpolation::bilinear;

  double lambda_effective() const { return lambda * lambda_unit; }
  double dt_grid() const { return t_f / static_cast<double>(n_t - 1); }

  static std::vector<double> default_torque_grid();

  void validate(const VehicleParams& p) const;
  void validate(const VehicleParams& p, const Corridor& c) const;
};

/// Squared-torque energy proxy plus travel-time penalty for one spatial step.
double stage_cost(double T_w, double v, double lambda, double ds);

// Value / torque tables over (position node, velocity node, time node).
class Policy {
 public:
  Policy() = default;
  Policy(const VehicleParams& p, const PlannerConfig& cfg, int k_start);

  int k_start() const { return k_start_; }
  int N() const { return N_; }
  int n_v() const { return n_v_; }
  int n_t() const { return n_t_; }
  double ds() const { return ds_; }
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  double t_f() const { return t_f_; }
  double dv() const { return (v_max_ - v_min_) / static_cast<double>(n_v_ - 1); }
  double dt() const { return t_f_ / static_cast<double>(n_t_ - 1); }
  double v_node(int iv) const { return v_min_ + static_cast<double>(iv) * dv(); }
  double t_node(int it) const { return static_cast<double>(it) * dt(); }
  double position(int k) const { return static_cast<double>(k) * ds_; }
  const std::vector<double>& torque_grid() const { return torque_grid_; }
  ValueInterpolation interpolation() const { return interpolation_; }

  double value(int k, int iv, int it) const { return value_[index(k, iv, it)]; }
  // Stored optimal torque index, -1 where no feasible continuation exists.
  int action(int k, int iv, int it) const { return action_[index(k, iv, it)]; }
  bool feasible(int k, int iv, int it) const { return action(k, iv, it) >= 0 || (k == N_ && std::isfinite(value(k, iv, it))); }
  double torque(int k, int iv, int it) const;

  /// Value at a continuous (v, t) on node k using the configured interpolation.
  double interpolate_value(int k, double v, double t) const;

  // Absolute time of the policy's t = 0 (nonzero after a replan).
  double t_origin() const { return t_origin_; }
  void set_t_origin(double t) { t_origin_ = t; }

  double start_value() const { return start_value_; }
  PlanState start_state() const { return start_; }

  // Raw access for the solver and export.
  std::vector<double>& values() { return value_; }
  std::vector<std::int16_t>& actions() { return action_; }
  const std::vector<double>& values() const { return value_; }
  const std::vector<std::int16_t>& actions() const { return action_; }
  void set_start(PlanState s, double v) {
    start_ = s;
    start_value_ = v;
  }

  std::size_t index(int k, int iv, int it) const {
    return (static_cast<std::size_t>(k - k_start_) * n_v_ + iv) * n_t_ + it;
  }

 private:
  int k_start_ = 0;
  int N_ = 0;
  int n_v_ = 0;
  int n_t_ = 0;
  double ds_ = 0.0;
  double v_min_ = 0.0;
  double v_max_ = 0.0;
  double t_f_ = 0.0;
  ValueInterpolation interpolation_ = ValueInterpolation::bilinear;
  std::vector<double> torque_grid_;
  std::vector<double> value_;
  std::vector<std::int16_t> action_;
  PlanState start_;
  double start_value_ = 0.0;
  double t_origin_ = 0.0;
};

/// Backward DP from the node nearest `start_position` to the end of the route.
/// Throws NoFeasiblePlanError when the start state has no feasible continuation.
Policy solve_dp(const VehicleParams& p, const Corridor& c, const PlannerConfig& cfg, const PlanState& start,
                double start_position);

struct BellmanChoice {
  bool feasible = false;
  int torque_index = -1;
  double torque = 0.0;
  double cost = 0.0;  // stage cost + interpolated cost-to-go
  PlanState next;
};

/// Minimizes the interpolated Bellman right-hand side over the torque grid at a
/// continuous state on node k (k < N).
BellmanChoice best_torque(const Policy& pol, const VehicleParams& p, const Corridor& c, const PlannerConfig& cfg,
                          int k, const PlanState& s);

struct ReferenceQuery {
  double v_ref = 0.0;
  bool flagged = false;   // fallback or clamping was needed
  bool fallback = false;  // answered from the nearest feasible node
  bool feasible = true;   // false when no feasible node exists on the queried stage
  int k = 0;
};

/// Reference velocity one spatial step ahead of the current state; t is absolute.
ReferenceQuery query_reference(const Policy& pol, const VehicleParams& p, double position, double v, double t);

/// Fresh solve from the current state against the latest signal timing. The new
/// policy's time axis starts at current.t, giving a full t_f budget from now.
Policy replan(const Policy& pol_prev, const VehicleParams& p, const Corridor& spat, const PlannerConfig& cfg,
              const PlanState& current, double position);

struct TrajectoryPoint {
  double position = 0.0;
  double v = 0.0;
  double t = 0.0;
  double T_w = 0.0;  // torque applied over the following step (0 at the last node)
};

struct PlannedCrossing {
  std::size_t intersection = 0;
  double t_arrival = 0.0;
};

/// Nominal optimal trajectory rolled out from the policy's start state.
std::vector<TrajectoryPoint> nominal_trajectory(const Policy& pol, const VehicleParams& p, const Corridor& c,
                                                const PlannerConfig& cfg);

/// Interpolated stop-bar arrival times along a trajectory.
std::vector<PlannedCrossing> planned_crossings(const std::vector<TrajectoryPoint>& traj, const Corridor& c);

// Atomic publication of the latest policy: readers always get a complete snapshot.
class PolicyStore {
 public:
  void publish(std::shared_ptr<const Policy> pol);
  std::shared_ptr<const Policy> snapshot() const;
  std::uint64_t generation() const;

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const Policy> current_;
  std::uint64_t generation_ = 0;
};

// Background worker that rebuilds the policy while the caller keeps serving
// queries from the store. Requests are processed in order.
class ReplanWorker {
 public:
  using Job = std::function<std::shared_ptr<const Policy>()>;

  explicit ReplanWorker(PolicyStore& store);
  ~ReplanWorker();
  ReplanWorker(const ReplanWorker&) = delete;
  ReplanWorker& operator=(const ReplanWorker&) = delete;

  // Returns a ticket for wait_for. Tickets count submitted jobs.
  std::uint64_t submit(Job job);
  // Blocks until the job with this ticket has finished (published or failed).
  void wait_for(std::uint64_t ticket);
  // Last job error, if any; cleared on read.
  std::optional<std::string> take_error();

 private:
  void run(std::stop_token st);

  PolicyStore& store_;
  std::mutex mu_;
  std::condition_variable_any cv_;
  std::vector<std::pair<std::uint64_t, Job>> queue_;
  std::uint64_t submitted_ = 0;
  std::uint64_t completed_ = 0;
  std::optional<std::string> error_;
  std::jthread thread_;
};

// Export: binary tables with a JSON metadata header.
nlohmann::json policy_metadata(const Policy& pol);
void write_policy_binary(const Policy& pol, const std::string& path);
Policy read_policy_binary(const std::string& path);

PlannerConfig planner_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PlannerConfig& cfg);

}  // namespace ecoacc
