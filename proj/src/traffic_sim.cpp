#include "ecoacc/traffic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ecoacc/errors.hpp"
#include "ecoacc/random.hpp"

namespace ecoacc {

namespace {

constexpr double kRemoveBeyond = 200.0;

class Fnv1a {
 public:
  void add(double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes) {
      h_ ^= b;
      h_ *= 0x100000001B3ULL;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

// Absolute time of the red onset in cycle c.
double red_onset(const Intersection& i, int c) {
  return static_cast<double>(c) * i.cycle + (i.green + i.yellow) - i.offset;
}

}  // namespace

void IdmParams::validate() const {
  if (!(v0 > 0.0 && T > 0.0 && s0 > 0.0 && a > 0.0 && b > 0.0 && delta > 0.0)) {
    throw ConfigError("invalid IDM params: all fields must be positive");
  }
}

double idm_accel(const IdmParams& p, double v, double gap, double dv) {
  if (!(gap > 0.0)) throw TrafficCollisionError("idm_accel: non-positive gap " + std::to_string(gap));
  const double s_star = p.s0 + v * p.T + v * dv / (2.0 * std::sqrt(p.a * p.b));
  const double r = s_star / gap;
  return p.a * (1.0 - std::pow(v / p.v0, p.delta) - r * r);
}

const char* to_string(ControllerKind k) {
  switch (k) {
    case ControllerKind::eco_acc:
      return "eco-acc";
    case ControllerKind::acc_only:
      return "acc-only";
    case ControllerKind::eco_acc_offline:
      return "eco-acc-offline";
  }
  return "unknown";
}

ControllerKind controller_from_string(const std::string& s) {
  if (s == "eco-acc") return ControllerKind::eco_acc;
  if (s == "acc-only") return ControllerKind::acc_only;
  if (s == "eco-acc-offline") return ControllerKind::eco_acc_offline;
  throw ConfigError("unknown controller '" + s + "' (expected eco-acc, acc-only or eco-acc-offline)");
}

void TrafficConfig::validate() const {
  idm.validate();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid traffic config: ") + what);
  };
  require(vehicle_length > 0.0, "vehicle_length > 0");
  require(v0_min > 0.0 && v0_max >= v0_min, "0 < v0_min <= v0_max");
  require(initial_vehicles >= 0, "initial_vehicles >= 0");
  require(first_gap_min > 0.0 && first_gap_max >= first_gap_min, "first gap range");
  require(spacing_min > vehicle_length && spacing_max >= spacing_min, "spacing range");
  require(cut_in_rate >= 0.0, "cut_in_rate >= 0");
  require(cut_in_gap_min > 0.0 && cut_in_gap_max >= cut_in_gap_min, "cut-in gap range");
  require(cut_in_speed_min >= 0.0 && cut_in_speed_max >= cut_in_speed_min, "cut-in speed range");
  require(discharge_headway > 0.0, "discharge_headway > 0");
  require(stop_decel > 0.0, "stop_decel > 0");
}

void Scenario::validate() const {
  vehicle.validate();
  corridor.validate(vehicle);
  mpc.validate();
  traffic.validate();
  if (controller != ControllerKind::acc_only) planner.validate(vehicle, corridor);
  if (acc_v_ref < 0.0 || acc_v_ref > vehicle.v_max) throw ConfigError("scenario: acc-only v_ref outside [0, v_max]");
  if (v_init < 0.0 || v_init > vehicle.v_max) throw ConfigError("scenario: initial speed outside [0, v_max]");
  if (!(hard_cap > 0.0)) throw ConfigError("scenario: hard_cap > 0");
  if (sensor_noise_std < 0.0) throw ConfigError("scenario: sensor_noise_std >= 0");
  if (replan_latency_steps < 0) throw ConfigError("scenario: replan_latency_steps >= 0");
}

EnvironmentRealization realize_environment(const Scenario& scn) {
  EnvironmentRealization env;
  env.schedule = sample_schedule(scn.corridor, scn.seed, scn.randomize_offsets);
  env.corridor = realize(scn.corridor, env.schedule);
  auto rng = make_rng(scn.seed, stream::traffic);
  const auto& tc = scn.traffic;
  Fnv1a h;
  for (double o : env.schedule.offsets) h.add(o);

  for (const auto& light : env.corridor.intersections) {
    const int n_cycles = static_cast<int>(std::ceil(scn.hard_cap / light.cycle)) + 2;
    std::vector<double> a;
    for (int c = 0; c < n_cycles; ++c) a.push_back(light.delay.empty() ? 0.0 : light.delay.sample(rng));
    for (double x : a) h.add(x);
    env.alpha.push_back(std::move(a));
  }

  double x = 0.0;
  for (int i = 0; i < tc.initial_vehicles; ++i) {
    x += i == 0 ? uniform(rng, tc.first_gap_min, tc.first_gap_max) : uniform(rng, tc.spacing_min, tc.spacing_max);
    Vehicle veh;
    veh.id = i;
    veh.x = x;
    veh.idm = tc.idm;
    veh.idm.v0 = uniform(rng, tc.v0_min, tc.v0_max);
    veh.v = 0.8 * veh.idm.v0;
    h.add(veh.x);
    h.add(veh.idm.v0);
    env.initial.push_back(veh);
  }

  if (tc.cut_in_rate > 0.0) {
    double t = 0.0;
    while (true) {
      t += -std::log(1.0 - uniform01(rng)) / tc.cut_in_rate;
      if (t >= scn.hard_cap) break;
      EnvironmentRealization::CutIn ev;
      ev.t = t;
      ev.gap = uniform(rng, tc.cut_in_gap_min, tc.cut_in_gap_max);
      ev.speed_fraction = uniform(rng, tc.cut_in_speed_min, tc.cut_in_speed_max);
      ev.v0 = uniform(rng, tc.v0_min, tc.v0_max);
      h.add(ev.t);
      h.add(ev.gap);
      h.add(ev.speed_fraction);
      h.add(ev.v0);
      env.cut_ins.push_back(ev);
    }
  }
  env.digest = h.value();
  return env;
}

TrafficModel::TrafficModel(const Scenario& scn, const EnvironmentRealization& env)
    : scn_(scn), env_(env), sets_(build_terminal_sets(scn.vehicle, scn.mpc)) {
  max_decel_ = scn.traffic.max_decel > 0.0 ? scn.traffic.max_decel : effective_braking(scn.vehicle);
  if (scn.traffic.mode == TrafficMode::idm) vehicles_ = env.initial;
  next_id_ = static_cast<int>(vehicles_.size());
  for (const auto& light : env.corridor.intersections) {
    int c = 0;
    while (red_onset(light, c) < 0.0) ++c;
    next_red_cycle_.push_back(c);
  }
}

const Vehicle* TrafficModel::front_of(double x) const {
  for (const auto& veh : vehicles_) {
    if (veh.x > x) return &veh;
  }
  return nullptr;
}

bool TrafficModel::region_clear(double lo, double hi) const {
  return std::none_of(vehicles_.begin(), vehicles_.end(), [&](const Vehicle& v) { return v.x >= lo && v.x <= hi; });
}

double TrafficModel::leader_accel(const Vehicle& veh, const Vehicle* leader, double t) const {
  const auto& tc = scn_.traffic;
  const double L = tc.vehicle_length;
  double a;
  if (leader) {
    a = idm_accel(veh.idm, veh.v, leader->x - veh.x - L, veh.v - leader->v);
  } else {
    a = veh.idm.a * (1.0 - std::pow(veh.v / veh.idm.v0, veh.idm.delta));
  }
  const double front = veh.x + L;
  for (const auto& light : env_.corridor.intersections) {
    if (light.position < front - 1e-9) continue;
    if (phase_at(light, t).phase != Phase::green) {
      const double dist = light.position - front;
      if (dist >= veh.v * veh.v / (2.0 * tc.stop_decel)) {
        a = std::min(a, idm_accel(veh.idm, veh.v, dist + veh.idm.s0, veh.v));
      }
    }
    break;
  }
  return std::max(a, -max_decel_);
}

void TrafficModel::apply_events(double t, double ego_x, double ego_v) {
  if (scn_.traffic.mode != TrafficMode::idm) return;
  const auto& tc = scn_.traffic;
  const double L = tc.vehicle_length;
  const double clearance = scn_.mpc.d_min + scn_.mpc.margin + 1.0;

  while (next_cut_in_ < env_.cut_ins.size() && env_.cut_ins[next_cut_in_].t <= t) {
    const auto& ev = env_.cut_ins[next_cut_in_++];
    if (ego_v < 2.0) continue;
    const double x_new = ego_x + ev.gap;
    const double v_new = ev.speed_fraction * ego_v;
    if (x_new + L > scn_.corridor.length) continue;
    if (ev.gap < clearance + std::max(0.0, sets_.stopping_distance(ego_v) - sets_.stopping_distance(v_new))) continue;
    const Vehicle* front = front_of(ego_x);
    if (front && front->x - (x_new + L) < tc.idm.s0 + 0.5 * v_new * tc.idm.T) continue;
    Vehicle veh;
    veh.id = next_id_++;
    veh.x = x_new;
    veh.v = v_new;
    veh.idm = tc.idm;
    veh.idm.v0 = ev.v0;
    vehicles_.insert(std::upper_bound(vehicles_.begin(), vehicles_.end(), x_new,
                                      [](double x, const Vehicle& v) { return x < v.x; }),
                     veh);
    ++cut_ins_applied_;
  }

  if (!tc.queues) return;
  const auto& lights = env_.corridor.intersections;
  for (std::size_t i = 0; i < lights.size(); ++i) {
    const auto& light = lights[i];
    while (red_onset(light, next_red_cycle_[i]) <= t) {
      const int c = next_red_cycle_[i]++;
      const auto& alphas = env_.alpha[i];
      const double alpha = alphas[static_cast<std::size_t>(std::min<int>(c, static_cast<int>(alphas.size()) - 1))];
      const int n = static_cast<int>(std::floor(alpha / tc.discharge_headway + 0.5));
      if (n <= 0) continue;
      const double pitch = L + tc.idm.s0;
      const double tail = light.position - L - (n - 1) * pitch;
      if (ego_x + clearance + sets_.stopping_distance(ego_v) > tail) continue;
      if (!region_clear(tail - pitch, light.position + 1.0)) continue;
      bool ok = true;
      for (const auto& veh : vehicles_) {
        if (veh.x < tail && tail - (veh.x + L) < tc.idm.s0 + veh.v * veh.v / (2.0 * tc.stop_decel)) ok = false;
      }
      if (!ok) continue;
      for (int j = 0; j < n; ++j) {
        Vehicle veh;
        veh.id = next_id_++;
        veh.x = light.position - L - j * pitch;
        veh.v = 0.0;
        veh.idm = tc.idm;
        vehicles_.insert(std::upper_bound(vehicles_.begin(), vehicles_.end(), veh.x,
                                          [](double x, const Vehicle& v) { return x < v.x; }),
                         veh);
      }
      queued_ += n;
    }
  }
}

void TrafficModel::step(double t, double t_s, double ego_x, double ego_v) {
  std::vector<double> acc(vehicles_.size());
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    const Vehicle* leader = i + 1 < vehicles_.size() ? &vehicles_[i + 1] : nullptr;
    acc[i] = leader_accel(vehicles_[i], leader, t);
  }
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    auto& veh = vehicles_[i];
    veh.x += t_s * veh.v;
    veh.v = std::max(0.0, veh.v + t_s * acc[i]);
    if (!std::isfinite(veh.x) || !std::isfinite(veh.v)) throw SimulationAbort("traffic state is not finite");
  }
  const double limit = scn_.corridor.length + kRemoveBeyond;
  std::erase_if(vehicles_, [&](const Vehicle& v) { return v.x > limit; });
  apply_events(t + t_s, ego_x, ego_v);
}

std::vector<Vehicle> spawn_traffic(const Scenario& scn, double t) {
  const EnvironmentRealization env = realize_environment(scn);
  TrafficModel tm(scn, env);
  const double ts = scn.mpc.t_s;
  const int steps = static_cast<int>(std::floor(t / ts + 1e-9));
  for (int k = 0; k < steps; ++k) tm.step(k * ts, ts, 0.0, 0.0);
  return tm.vehicles();
}

std::shared_ptr<const Policy> pretrip_policy(const Scenario& scn) {
  const EnvironmentRealization env = realize_environment(scn);
  const auto& p = scn.vehicle;
  const PlanState start{std::clamp(scn.v_init, p.v_min_plan, p.v_max), 0.0};
  return std::make_shared<const Policy>(solve_dp(p, env.corridor, scn.planner, start, 0.0));
}

SimTrace run_closed_loop(const Scenario& scn, std::shared_ptr<const Policy> pretrip) {
  scn.validate();
  const EnvironmentRealization env = realize_environment(scn);
  const Corridor& c = env.corridor;
  const VehicleParams& p = scn.vehicle;
  const MpcConfig& mc = scn.mpc;
  const double ts = mc.t_s;
  const TerminalSets sets = build_terminal_sets(p, mc);
  const bool planned = scn.controller != ControllerKind::acc_only;
  const bool online = scn.controller == ControllerKind::eco_acc;

  PolicyStore store;
  if (planned) {
    if (!pretrip) {
      const PlanState start{std::clamp(scn.v_init, p.v_min_plan, p.v_max), 0.0};
      pretrip = std::make_shared<const Policy>(solve_dp(p, c, scn.planner, start, 0.0));
    }
    store.publish(pretrip);
  }
  std::optional<ReplanWorker> worker;
  bool pending = false;
  std::uint64_t ticket = 0;
  int adopt_step = 0;
  double last_replan = 0.0;

  TrafficModel traffic(scn, env);
  auto sensor_rng = make_rng(scn.seed, stream::sensor);

  SimTrace trace;
  trace.t_s = ts;
  trace.R_w = p.R_w;
  RunSummary& sum = trace.summary;
  sum.seed = scn.seed;
  sum.controller = scn.controller;
  sum.lambda = scn.planner.lambda;
  sum.environment_digest = env.digest;
  sum.min_gap = kNoLeaderGap;

  double x = 0.0;
  double v = scn.v_init;
  double u_prev = 0.0;
  double v_ref_prev = 0.0;
  bool started = v >= p.v_min_plan;
  bool moving = started;
  double min_post = started ? v : std::numeric_limits<double>::infinity();
  std::size_t next_light = 0;
  const auto& lights = c.intersections;

  for (int k = 0;; ++k) {
    const double t = k * ts;
    if (x >= c.length) {
      sum.completed = true;
      break;
    }
    if (t > scn.hard_cap) break;

    if (pending && k >= adopt_step) {
      worker->wait_for(ticket);
      pending = false;
      if (worker->take_error()) last_replan = t;  // keep the previous policy
    }

    while (next_light < lights.size() && lights[next_light].position < x) ++next_light;
    const Intersection* light = next_light < lights.size() ? &lights[next_light] : nullptr;
    const double d_TL = light ? light->position - x : kNoLightDistance;
    const PhaseState phase =
        light ? phase_at(*light, t) : PhaseState{Phase::green, std::numeric_limits<double>::infinity()};
    const Vehicle* front = traffic.front_of(x);
    const double d_f = front ? front->x - x : kNoLeaderGap;
    const double v_f = front ? front->v : p.v_max;
    double d_f_meas = d_f;
    if (scn.sensor_noise_std > 0.0 && front) d_f_meas += scn.sensor_noise_std * standard_normal(sensor_rng);

    double v_ref = scn.acc_v_ref;
    if (planned) {
      const auto pol = store.snapshot();
      const ReferenceQuery q = query_reference(*pol, p, std::min(x, c.length), v, t);
      if (q.flagged) ++sum.flagged_queries;
      if (q.feasible) {
        v_ref = q.v_ref;
      } else {
        v_ref = online ? v_ref_prev : 0.0;
      }
      const bool needs = !q.feasible || q.fallback;
      const bool periodic = scn.replan_period > 0.0 && t - last_replan >= scn.replan_period;
      if (online && !pending && ((needs && t - last_replan >= scn.replan_cooldown) || periodic)) {
        if (!worker) worker.emplace(store);
        const PlannerConfig cfg = scn.planner;
        const PlanState now{v, t};
        const double pos = x;
        ticket = worker->submit([pol, &p, &c, cfg, now, pos]() {
          return std::make_shared<const Policy>(replan(*pol, p, c, cfg, now, pos));
        });
        pending = true;
        adopt_step = k + scn.replan_latency_steps;
        last_replan = t;
        ++sum.replans;
      }
    }
    v_ref = std::clamp(v_ref, 0.0, p.v_max);

    const MpcSolution sol = solve_mpc(p, mc, sets, {d_TL, d_f_meas, v}, phase, v_ref, predict_front(v_f, mc.N_p), u_prev);
    const double u = sol.first_torque();
    if (sol.status == MpcStatus::infeasible_safety_fallback) ++sum.fallback_steps;

    TraceRecord rec;
    rec.t = t;
    rec.position = x;
    rec.v = v;
    rec.T_w = u;
    rec.v_ref = v_ref;
    rec.d_f = d_f;
    rec.d_TL = d_TL;
    rec.phase = phase.phase;
    rec.slack = sol.slack.empty() ? 0.0 : sol.slack.front();
    rec.status = sol.status;
    rec.cost = sol.terms;
    trace.records.push_back(rec);
    ++sum.steps;

    if (front) {
      sum.min_gap = std::min(sum.min_gap, d_f);
      if (d_f < mc.d_min) ++sum.gap_violations;
    }
    if (!started && v >= p.v_min_plan) {
      started = true;
      moving = true;
    }
    if (started) min_post = std::min(min_post, v);
    if (v >= 1.0) moving = true;
    if (moving && v < 0.1) {
      ++sum.stop_count;
      moving = false;
    }

    const double a = traction_accel(p, v, u);
    const double v_new = std::max(0.0, v + ts * a);
    const double x_new = x + ts * v;
    if (!std::isfinite(v_new) || !std::isfinite(x_new)) {
      sum.abort_reason = "plant state is not finite";
      break;
    }
    for (const auto& l : lights) {
      if (l.position >= x && l.position < x_new) {
        const double t_c = t + (l.position - x) / v;
        trace.crossings.emplace_back(l.position, t_c);
        if (phase_at(l, t_c).phase == Phase::red) ++sum.red_crossings;
      }
    }
    if (x_new >= c.length) sum.travel_time = t + (c.length - x) / v;
    try {
      traffic.step(t, ts, x_new, v_new);
    } catch (const TrafficCollisionError& e) {
      sum.abort_reason = e.what();
      x = x_new;
      break;
    }
    x = x_new;
    v = v_new;
    u_prev = u;
    v_ref_prev = v_ref;
  }
  if (pending) worker->wait_for(ticket);

  if (!sum.completed) sum.travel_time = trace.records.empty() ? 0.0 : trace.records.back().t + ts;
  sum.min_speed_post_start = std::isfinite(min_post) ? min_post : 0.0;
  sum.cut_ins = traffic.spawned_cut_ins();
  sum.queued_vehicles = traffic.spawned_queued();
  double e = 0.0, s1 = 0.0, s2 = 0.0;
  for (const auto& r : trace.records) {
    e += std::max(r.T_w * r.v / p.R_w, 0.0) * ts;
    s1 += r.v;
    s2 += r.v * r.v;
  }
  const double n = static_cast<double>(std::max<std::size_t>(trace.records.size(), 1));
  sum.wheel_energy_kwh = e / 3.6e6;
  sum.mean_speed = s1 / n;
  sum.std_speed = std::sqrt(std::max(0.0, s2 / n - sum.mean_speed * sum.mean_speed));
  return trace;
}

void write_trace_csv(const SimTrace& trace, std::ostream& out) {
  out << "t,position,v,T_w,v_ref,d_f,d_TL,phase,slack,status,cost_tracking,cost_input,cost_jerk,cost_slack\n";
  char buf[512];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%s,%.6f,%s,%.6g,%.6g,%.6g,%.6g\n", r.t,
                  r.position, r.v, r.T_w, r.v_ref, r.d_f, r.d_TL, to_string(r.phase), r.slack, to_string(r.status),
                  r.cost.tracking, r.cost.input, r.cost.jerk, r.cost.slack);
    out << buf;
  }
}

void write_trace_csv(const SimTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trace: " + path);
  write_trace_csv(trace, out);
  if (!out) throw IoError("failed writing trace: " + path);
}

nlohmann::json summary_to_json(const RunSummary& s) {
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx", static_cast<unsigned long long>(s.environment_digest));
  return {{"seed", s.seed},
          {"controller", to_string(s.controller)},
          {"lambda", s.lambda},
          {"completed", s.completed},
          {"travel_time", s.travel_time},
          {"wheel_energy_kwh", s.wheel_energy_kwh},
          {"min_gap", s.min_gap},
          {"min_speed_post_start", s.min_speed_post_start},
          {"mean_speed", s.mean_speed},
          {"std_speed", s.std_speed},
          {"stop_count", s.stop_count},
          {"red_crossings", s.red_crossings},
          {"gap_violations", s.gap_violations},
          {"fallback_steps", s.fallback_steps},
          {"steps", s.steps},
          {"replans", s.replans},
          {"flagged_queries", s.flagged_queries},
          {"cut_ins", s.cut_ins},
          {"queued_vehicles", s.queued_vehicles},
          {"environment_digest", digest},
          {"abort_reason", s.abort_reason}};
}

IdmParams idm_params_from_json(const nlohmann::json& j) {
  IdmParams p;
  p.v0 = j.value("v0", p.v0);
  p.T = j.value("T", p.T);
  p.s0 = j.value("s0", p.s0);
  p.a = j.value("a", p.a);
  p.b = j.value("b", p.b);
  p.delta = j.value("delta", p.delta);
  p.validate();
  return p;
}

TrafficConfig traffic_config_from_json(const nlohmann::json& j) {
  TrafficConfig t;
  try {
    const auto mode = j.value("mode", std::string("none"));
    if (mode == "none") {
      t.mode = TrafficMode::none;
    } else if (mode == "idm") {
      t.mode = TrafficMode::idm;
    } else {
      throw ConfigError("traffic config: unknown mode '" + mode + "'");
    }
    if (j.contains("idm")) t.idm = idm_params_from_json(j.at("idm"));
    t.vehicle_length = j.value("vehicle_length", t.vehicle_length);
    t.v0_min = j.value("v0_min", t.v0_min);
    t.v0_max = j.value("v0_max", t.v0_max);
    t.initial_vehicles = j.value("initial_vehicles", t.initial_vehicles);
    t.first_gap_min = j.value("first_gap_min", t.first_gap_min);
    t.first_gap_max = j.value("first_gap_max", t.first_gap_max);
    t.spacing_min = j.value("spacing_min", t.spacing_min);
    t.spacing_max = j.value("spacing_max", t.spacing_max);
    t.cut_in_rate = j.value("cut_in_rate", t.cut_in_rate);
    t.cut_in_gap_min = j.value("cut_in_gap_min", t.cut_in_gap_min);
    t.cut_in_gap_max = j.value("cut_in_gap_max", t.cut_in_gap_max);
    t.cut_in_speed_min = j.value("cut_in_speed_min", t.cut_in_speed_min);
    t.cut_in_speed_max = j.value("cut_in_speed_max", t.cut_in_speed_max);
    t.queues = j.value("queues", t.queues);
    t.discharge_headway = j.value("discharge_headway", t.discharge_headway);
    t.stop_decel = j.value("stop_decel", t.stop_decel);
    t.max_decel = j.value("max_decel", t.max_decel);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("traffic config: ") + e.what());
  }
  t.validate();
  return t;
}

nlohmann::json to_json(const TrafficConfig& t) {
  return {{"mode", t.mode == TrafficMode::idm ? "idm" : "none"},
          {"idm", {{"v0", t.idm.v0}, {"T", t.idm.T}, {"s0", t.idm.s0}, {"a", t.idm.a}, {"b", t.idm.b}, {"delta", t.idm.delta}}},
          {"vehicle_length", t.vehicle_length},
          {"v0_min", t.v0_min},
          {"v0_max", t.v0_max},
          {"initial_vehicles", t.initial_vehicles},
          {"first_gap_min", t.first_gap_min},
          {"first_gap_max", t.first_gap_max},
          {"spacing_min", t.spacing_min},
          {"spacing_max", t.spacing_max},
          {"cut_in_rate", t.cut_in_rate},
          {"cut_in_gap_min", t.cut_in_gap_min},
          {"cut_in_gap_max", t.cut_in_gap_max},
          {"cut_in_speed_min", t.cut_in_speed_min},
          {"cut_in_speed_max", t.cut_in_speed_max},
          {"queues", t.queues},
          {"discharge_headway", t.discharge_headway},
          {"stop_decel", t.stop_decel},
          {"max_decel", t.max_decel}};
}

}  // namespace ecoacc
