#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ecoacc/acc_mpc.hpp"
#include "ecoacc/eco_planner.hpp"
#include "ecoacc/signal_corridor.hpp"
#include "ecoacc/vehicle_model.hpp"

namespace ecoacc {

struct IdmParams {
  double v0 = 13.0;  // m/s
  double T = 1.5;    // s
  double s0 = 2.0;   // m
  double a = 1.5;    // m/s^2
  double b = 2.0;    // m/s^2
  double delta = 4.0;

  void validate() const;
};

/// Intelligent driver model acceleration. Throws TrafficCollisionError when gap <= 0.
double idm_accel(const IdmParams& p, double v, double gap, double dv);

enum class TrafficMode { none, idm };
enum class ControllerKind { eco_acc, acc_only, eco_acc_offline };

const char* to_string(ControllerKind k);
ControllerKind controller_from_string(const std::string& s);

struct TrafficConfig {
  TrafficMode mode = TrafficMode::none;
  IdmParams idm;
  double vehicle_length = 5.0;
  // Desired speeds of background vehicles are drawn uniformly from this range.
  double v0_min = 9.0;
  double v0_max = 14.0;
  // Vehicles present at t = 0, placed ahead of the subject.
  int initial_vehicles = 3;
  double first_gap_min = 40.0;
  double first_gap_max = 120.0;
  double spacing_min = 60.0;
  double spacing_max = 250.0;
  // Cut-ins: Poisson events; the new vehicle appears this far ahead of the subject.
  double cut_in_rate = 1.0 / 45.0;  // 1/s
  double cut_in_gap_min = 15.0;
  double cut_in_gap_max = 40.0;
  double cut_in_speed_min = 0.6;  // fraction of the subject's speed
  double cut_in_speed_max = 0.95;
  // Queues: at each red onset a queue of round(alpha / headway) vehicles forms at the stop bar.
  bool queues = true;
  double discharge_headway = 2.0;
  // Background vehicles stop for a non-green light when they can do so at this deceleration.
  double stop_decel = 4.5;
  // Hard limit on background braking; <= 0 uses the subject's effective braking.
  double max_decel = 0.0;

  void validate() const;
};

struct Scenario {
  Corridor corridor;
  VehicleParams vehicle;
  PlannerConfig planner;
  MpcConfig mpc;
  TrafficConfig traffic;
  std::uint64_t seed = 0;
  bool randomize_offsets = true;
  ControllerKind controller = ControllerKind::eco_acc;
  double acc_v_ref = 15.0;
  double v_init = 0.0;
  double hard_cap = 600.0;
  double sensor_noise_std = 0.0;  // Gaussian range noise on d_f (m)
  double replan_cooldown = 10.0;  // minimum spacing of online replans (s)
  double replan_period = 0.0;     // additional periodic replans; 0 disables
  int replan_latency_steps = 1;   // control steps between submitting and adopting a replan

  void validate() const;
};

struct Vehicle {
  int id = 0;
  double x = 0.0;  // rear bumper position (m)
  double v = 0.0;
  IdmParams idm;
};

// Controller-independent random events for one seed.
struct EnvironmentRealization {
  ScheduleSample schedule;
  Corridor corridor;                        // with realized offsets
  std::vector<std::vector<double>> alpha;   // per intersection, per cycle index
  std::vector<Vehicle> initial;             // positions relative to the subject's start
  struct CutIn {
    double t = 0.0;
    double gap = 0.0;
    double speed_fraction = 0.0;
    double v0 = 0.0;
  };
  std::vector<CutIn> cut_ins;
  std::uint64_t digest = 0;
};

EnvironmentRealization realize_environment(const Scenario& scn);

// Background traffic on a single lane.
class TrafficModel {
 public:
  TrafficModel(const Scenario& scn, const EnvironmentRealization& env);

  // Advances background vehicles by one step and applies due spawn events.
  // The subject's state is needed to keep injected vehicles outside its braking envelope.
  void step(double t, double t_s, double ego_x, double ego_v);
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  // Nearest vehicle whose rear is ahead of `x`, or nullptr.
  const Vehicle* front_of(double x) const;
  int spawned_cut_ins() const { return cut_ins_applied_; }
  int spawned_queued() const { return queued_; }

 private:
  void apply_events(double t, double ego_x, double ego_v);
  bool region_clear(double lo, double hi) const;
  double leader_accel(const Vehicle& veh, const Vehicle* leader, double t) const;

  const Scenario& scn_;
  const EnvironmentRealization& env_;
  TerminalSets sets_;
  double max_decel_ = 0.0;
  std::vector<Vehicle> vehicles_;  // ascending in x
  std::size_t next_cut_in_ = 0;
  std::vector<int> next_red_cycle_;
  int next_id_ = 0;
  int cut_ins_applied_ = 0;
  int queued_ = 0;
};

/// Background traffic at time t when the subject waits at its start position.
std::vector<Vehicle> spawn_traffic(const Scenario& scn, double t);

struct TraceRecord {
  double t = 0.0;
  double position = 0.0;
  double v = 0.0;
  double T_w = 0.0;
  double v_ref = 0.0;
  double d_f = 0.0;
  double d_TL = 0.0;
  Phase phase = Phase::green;
  double slack = 0.0;
  MpcStatus status = MpcStatus::optimal;
  MpcCostTerms cost;
};

struct RunSummary {
  std::uint64_t seed = 0;
  ControllerKind controller = ControllerKind::eco_acc;
  double lambda = 0.0;
  bool completed = false;
  double travel_time = 0.0;
  double wheel_energy_kwh = 0.0;
  double min_gap = 0.0;
  double min_speed_post_start = 0.0;
  double mean_speed = 0.0;
  double std_speed = 0.0;
  int stop_count = 0;
  int red_crossings = 0;
  int gap_violations = 0;
  int fallback_steps = 0;
  int steps = 0;
  int replans = 0;
  int flagged_queries = 0;
  int cut_ins = 0;
  int queued_vehicles = 0;
  std::uint64_t environment_digest = 0;
  std::string abort_reason;  // empty unless the run aborted

  bool safe() const { return red_crossings == 0 && gap_violations == 0; }
};

struct SimTrace {
  double t_s = 0.2;
  double R_w = 0.31;
  std::vector<TraceRecord> records;
  RunSummary summary;
  std::vector<std::pair<double, double>> crossings;  // (intersection position, crossing time)
};

inline constexpr double kNoLeaderGap = 1e4;
inline constexpr double kNoLightDistance = 1e4;

/// Closed-loop run. `pretrip` may carry an already solved pre-trip policy for
/// the scenario's realized corridor; otherwise it is solved here.
/// Throws NoFeasiblePlanError when the pre-trip plan is infeasible.
SimTrace run_closed_loop(const Scenario& scn, std::shared_ptr<const Policy> pretrip = nullptr);

/// Pre-trip policy for a scenario's realized corridor.
std::shared_ptr<const Policy> pretrip_policy(const Scenario& scn);

void write_trace_csv(const SimTrace& trace, std::ostream& out);
void write_trace_csv(const SimTrace& trace, const std::string& path);
nlohmann::json summary_to_json(const RunSummary& s);

IdmParams idm_params_from_json(const nlohmann::json& j);
TrafficConfig traffic_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrafficConfig& cfg);

}  // namespace ecoacc
