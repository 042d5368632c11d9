#include "ecoacc/eco_planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "ecoacc/errors.hpp"

namespace ecoacc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

// Linear interpolation stencil along one grid axis: value = (1-w) f[i0] + w f[i0+1].
struct Stencil {
  int i0 = 0;
  double w = 0.0;
  bool inside = false;
};

Stencil make_stencil(double f, int n) {
  Stencil s;
  if (f < -kTol || f > static_cast<double>(n - 1) + kTol) return s;
  s.inside = true;
  f = std::clamp(f, 0.0, static_cast<double>(n - 1));
  if (n == 1) return s;
  int i0 = static_cast<int>(std::floor(f));
  if (i0 >= n - 1) i0 = n - 2;
  s.i0 = i0;
  s.w = f - static_cast<double>(i0);
  return s;
}

int nearest_index(double f, int n) { return std::clamp(static_cast<int>(std::floor(f + 0.5)), 0, n - 1); }

// Interpolated value on a stage row (n_v x n_t, row-major in t).
double interp_row(const double* row, int n_v, int n_t, const Stencil& sv, const Stencil& st,
                  ValueInterpolation mode, double fv, double ft) {
  if (!sv.inside || !st.inside) return kInf;
  if (mode == ValueInterpolation::nearest) {
    return row[static_cast<std::size_t>(nearest_index(fv, n_v)) * n_t + nearest_index(ft, n_t)];
  }
  const double wv[2] = {1.0 - sv.w, sv.w};
  const double wt[2] = {1.0 - st.w, st.w};
  double acc = 0.0;
  for (int a = 0; a < 2; ++a) {
    if (wv[a] == 0.0) continue;
    const std::size_t base = static_cast<std::size_t>(sv.i0 + a) * n_t;
    for (int b = 0; b < 2; ++b) {
      if (wt[b] == 0.0) continue;
      const double val = row[base + st.i0 + b];
      if (!std::isfinite(val)) return kInf;
      acc += wv[a] * wt[b] * val;
    }
  }
  return acc;
}

struct CellCrossing {
  const Intersection* light = nullptr;
  double frac = 0.0;    // position of the stop bar inside the cell, in [0, 1]
  double margin = 0.0;  // delay quantile + extra margin
};

std::vector<std::vector<CellCrossing>> cell_crossings(const Corridor& c, const PlannerConfig& cfg) {
  std::vector<std::vector<CellCrossing>> cells(static_cast<std::size_t>(cfg.N));
  for (const auto& light : c.intersections) {
    // Cell k covers (s_k, s_{k+1}]; a stop bar at exactly 0 belongs to cell 0.
    int k = static_cast<int>(std::ceil(light.position / cfg.ds - kTol)) - 1;
    if (k < 0) k = 0;
    if (k >= cfg.N) continue;
    const double frac = (light.position - static_cast<double>(k) * cfg.ds) / cfg.ds;
    cells[static_cast<std::size_t>(k)].push_back(
        {&light, std::clamp(frac, 0.0, 1.0), delay_quantile(light.delay, cfg.eta) + cfg.crossing_margin});
  }
  return cells;
}

bool crossings_ok(const std::vector<CellCrossing>& cell, double t, double dt_step) {
  for (const auto& cc : cell) {
    if (!feasible_crossing_with_margin(*cc.light, t + dt_step * cc.frac, cc.margin)) return false;
  }
  return true;
}

// Transition data that depends only on (v node, torque) on a flat road.
struct Transition {
  bool valid = false;
  double stage = 0.0;
  double v_next = 0.0;
  double dt_step = 0.0;
};

Transition make_transition(const VehicleParams& p, const PlannerConfig& cfg, double v, double torque) {
  Transition tr;
  if (torque < p.T_w_min || torque > p.T_w_max) return tr;
  const double a = traction_accel(p, v, torque);
  if (a < p.a_min - kTol || a > p.a_max + kTol) return tr;
  PlanState next;
  try {
    next = step_space(p, PlanState{v, 0.0}, torque, cfg.ds);
  } catch (const StepInfeasibleError&) {
    return tr;
  }
  if (next.v < p.v_min_plan - kTol || next.v > p.v_max + kTol) return tr;
  // The Euler step in space overshoots at low speed; the constant-acceleration
  // equivalent of the speed change must stay within the acceleration limits too.
  const double a_kin = (next.v * next.v - v * v) / (2.0 * cfg.ds);
  if (a_kin < p.a_min - kTol || a_kin > p.a_max + kTol) return tr;
  tr.valid = true;
  tr.stage = stage_cost(torque, v, cfg.lambda_effective(), cfg.ds);
  tr.v_next = next.v;
  tr.dt_step = next.t;
  return tr;
}

int nearest_node(double position, double ds, int N) {
  return std::clamp(static_cast<int>(std::floor(position / ds + 0.5)), 0, N);
}

}  // namespace

std::vector<double> PlannerConfig::default_torque_grid() {
  // Denser near zero so low speeds still have admissible small torques.
  return {-1350, -1000, -700, -480, -320, -210, -135, -85, -50, -20, 0,
          20,    50,    85,   135,  210,  320,  480,  700,  850,  1000};
}

void PlannerConfig::validate(const VehicleParams& p) const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid planner config: ") + what);
  };
  require(ds > 0.0, "ds > 0");
  require(N >= 1, "N >= 1");
  require(lambda >= 0.0 && lambda_unit > 0.0, "lambda >= 0");
  require(eta >= 0.0 && eta <= 1.0, "0 <= eta <= 1");
  require(t_f > 0.0, "t_f > 0");
  require(n_v >= 2 && n_t >= 2, "grid resolutions >= 2");
  require(!torque_grid.empty(), "torque grid nonempty");
  require(torque_grid.size() < 32000, "torque grid too large");
  require(crossing_margin >= 0.0, "crossing_margin >= 0");
  for (double T : torque_grid) require(T >= p.T_w_min && T <= p.T_w_max, "torque grid within [T_w_min, T_w_max]");
}

void PlannerConfig::validate(const VehicleParams& p, const Corridor& c) const {
  validate(p);
  if (std::abs(ds * N - c.length) > 1e-6 * std::max(1.0, c.length)) {
    throw ConfigError("invalid planner config: ds * N must equal the corridor length");
  }
}

double stage_cost(double T_w, double v, double lambda, double ds) {
  if (!(v > 0.0)) throw BoundsError("stage_cost: velocity must be positive");
  const double inv_v = 1.0 / v;
  return (T_w * T_w + lambda * inv_v * inv_v) * ds * ds;
}

Policy::Policy(const VehicleParams& p, const PlannerConfig& cfg, int k_start)
    : k_start_(k_start),
      N_(cfg.N),
      n_v_(cfg.n_v),
      n_t_(cfg.n_t),
      ds_(cfg.ds),
      v_min_(p.v_min_plan),
      v_max_(p.v_max),
      t_f_(cfg.t_f),
      interpolation_(cfg.interpolation),
      torque_grid_(cfg.torque_grid) {
  const std::size_t n = static_cast<std::size_t>(N_ - k_start_ + 1) * n_v_ * n_t_;
  value_.assign(n, kInf);
  action_.assign(n, -1);
}

double Policy::torque(int k, int iv, int it) const {
  const int a = action(k, iv, it);
  return a >= 0 ? torque_grid_[static_cast<std::size_t>(a)] : 0.0;
}

double Policy::interpolate_value(int k, double v, double t) const {
  if (k < k_start_ || k > N_) return kInf;
  const double fv = (v - v_min_) / dv();
  const double ft = t / dt();
  const double* row = value_.data() + index(k, 0, 0);
  return interp_row(row, n_v_, n_t_, make_stencil(fv, n_v_), make_stencil(ft, n_t_), interpolation_, fv, ft);
}

Policy solve_dp(const VehicleParams& p, const Corridor& c, const PlannerConfig& cfg, const PlanState& start,
                double start_position) {
  cfg.validate(p, c);
  if (start.v < p.v_min_plan - kTol || start.v > p.v_max + kTol || start.t < 0.0 || start.t > cfg.t_f + kTol) {
    throw BoundsError("solve_dp: start state outside the grid");
  }
  const int k0 = nearest_node(start_position, cfg.ds, cfg.N);
  Policy pol(p, cfg, k0);
  const int n_v = cfg.n_v;
  const int n_t = cfg.n_t;
  const double lambda = cfg.lambda_effective();
  const double inv_dv = 1.0 / pol.dv();
  const double inv_dt = 1.0 / pol.dt();
  auto& V = pol.values();
  auto& act = pol.actions();

  for (int iv = 0; iv < n_v; ++iv) {
    const double v = pol.v_node(iv);
    const double terminal = stage_cost(0.0, v, lambda, cfg.ds);
    for (int it = 0; it < n_t; ++it) V[pol.index(cfg.N, iv, it)] = terminal;
  }

  const auto crossings = cell_crossings(c, cfg);
  const std::size_t n_tq = cfg.torque_grid.size();
  std::vector<Transition> trans(n_tq);
  std::vector<Stencil> v_sten(n_tq);
  std::vector<double> v_frac(n_tq);

  for (int k = cfg.N - 1; k >= k0; --k) {
    const double* next_row = V.data() + pol.index(k + 1, 0, 0);
    const auto& cell = crossings[static_cast<std::size_t>(k)];
    for (int iv = 0; iv < n_v; ++iv) {
      const double v = pol.v_node(iv);
      for (std::size_t j = 0; j < n_tq; ++j) {
        trans[j] = make_transition(p, cfg, v, cfg.torque_grid[j]);
        v_frac[j] = (trans[j].v_next - pol.v_min()) * inv_dv;
        v_sten[j] = make_stencil(v_frac[j], n_v);
      }
      for (int it = 0; it < n_t; ++it) {
        const double t = pol.t_node(it);
        double best = kInf;
        int arg = -1;
        for (std::size_t j = 0; j < n_tq; ++j) {
          const Transition& tr = trans[j];
          if (!tr.valid) continue;
          const double t_next = t + tr.dt_step;
          if (t_next > cfg.t_f + kTol) continue;
          if (!cell.empty() && !crossings_ok(cell, t, tr.dt_step)) continue;
          const double ft = t_next * inv_dt;
          const double cont =
              interp_row(next_row, n_v, n_t, v_sten[j], make_stencil(ft, n_t), cfg.interpolation, v_frac[j], ft);
          if (!std::isfinite(cont)) continue;
          const double total = tr.stage + cont;
          if (total < best) {
            best = total;
            arg = static_cast<int>(j);
          }
        }
        const std::size_t idx = pol.index(k, iv, it);
        V[idx] = best;
        act[idx] = static_cast<std::int16_t>(arg);
      }
    }
  }

  double start_value = kInf;
  if (k0 == cfg.N) {
    start_value = pol.interpolate_value(k0, start.v, start.t);
  } else {
    start_value = best_torque(pol, p, c, cfg, k0, start).cost;
  }
  if (!std::isfinite(start_value)) {
    throw NoFeasiblePlanError("solve_dp: no feasible plan from the start state");
  }
  pol.set_start(start, start_value);
  return pol;
}

BellmanChoice best_torque(const Policy& pol, const VehicleParams& p, const Corridor& c, const PlannerConfig& cfg,
                          int k, const PlanState& s) {
  BellmanChoice out;
  out.cost = kInf;
  if (k < pol.k_start() || k >= pol.N()) return out;
  const auto cells = cell_crossings(c, cfg);
  const auto& cell = cells[static_cast<std::size_t>(k)];
  const double inv_dv = 1.0 / pol.dv();
  const double inv_dt = 1.0 / pol.dt();
  const double* next_row = pol.values().data() + pol.index(k + 1, 0, 0);
  const auto& grid = pol.torque_grid();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Transition tr = make_transition(p, cfg, s.v, grid[j]);
    if (!tr.valid) continue;
    const double t_next = s.t + tr.dt_step;
    if (t_next > cfg.t_f + kTol) continue;
    if (!cell.empty() && !crossings_ok(cell, s.t, tr.dt_step)) continue;
    const double fv = (tr.v_next - pol.v_min()) * inv_dv;
    const double ft = t_next * inv_dt;
    const double cont = interp_row(next_row, pol.n_v(), pol.n_t(), make_stencil(fv, pol.n_v()),
                                   make_stencil(ft, pol.n_t()), pol.interpolation(), fv, ft);
    if (!std::isfinite(cont)) continue;
    const double total = tr.stage + cont;
    if (total < out.cost) {
      out.feasible = true;
      out.cost = total;
      out.torque_index = static_cast<int>(j);
      out.torque = grid[j];
      out.next = {tr.v_next, t_next};
    }
  }
  return out;
}

ReferenceQuery query_reference(const Policy& pol, const VehicleParams& p, double position, double v, double t) {
  ReferenceQuery q;
  int k = static_cast<int>(std::ceil(position / pol.ds() - kTol));
  k = std::clamp(k, pol.k_start(), pol.N());
  q.k = k;
  const double v_q = std::clamp(v, pol.v_min(), pol.v_max());
  if (v_q != v) q.flagged = true;
  if (k >= pol.N()) {
    q.v_ref = v_q;
    return q;
  }
  t -= pol.t_origin();
  const double t_node = t + std::max(0.0, pol.position(k) - position) / std::max(v, pol.v_min());
  if (t_node > pol.t_f() + kTol) {
    // Past the time budget the policy has no answer at all.
    q.flagged = true;
    q.feasible = false;
    q.v_ref = v_q;
    return q;
  }
  const double t_q = std::clamp(t_node, 0.0, pol.t_f());
  if (t_q != t_node) q.flagged = true;

  auto propagated = [&](int iv, int it) {
    const PlanState next = step_space(p, PlanState{pol.v_node(iv), pol.t_node(it)}, pol.torque(k, iv, it), pol.ds());
    return next.v;
  };

  const double fv = (v_q - pol.v_min()) / pol.dv();
  const double ft = t_q / pol.dt();
  const Stencil sv = make_stencil(fv, pol.n_v());
  const Stencil st = make_stencil(ft, pol.n_t());
  const double wv[2] = {1.0 - sv.w, sv.w};
  const double wt[2] = {1.0 - st.w, st.w};
  double acc = 0.0;
  double wsum = 0.0;
  bool any_infeasible = false;
  for (int a = 0; a < 2; ++a) {
    if (wv[a] == 0.0) continue;
    for (int b = 0; b < 2; ++b) {
      if (wt[b] == 0.0) continue;
      const int iv = sv.i0 + a;
      const int it = st.i0 + b;
      if (pol.action(k, iv, it) < 0) {
        any_infeasible = true;
        continue;
      }
      acc += wv[a] * wt[b] * propagated(iv, it);
      wsum += wv[a] * wt[b];
    }
  }
  if (wsum > 0.0) {
    q.v_ref = acc / wsum;
    if (any_infeasible) q.flagged = true;
  } else {
    // Nearest feasible node on this stage.
    q.flagged = true;
    q.fallback = true;
    double best = kInf;
    int best_iv = -1;
    int best_it = -1;
    for (int iv = 0; iv < pol.n_v(); ++iv) {
      for (int it = 0; it < pol.n_t(); ++it) {
        if (pol.action(k, iv, it) < 0) continue;
        const double d = std::abs(static_cast<double>(iv) - fv) + std::abs(static_cast<double>(it) - ft);
        if (d < best) {
          best = d;
          best_iv = iv;
          best_it = it;
        }
      }
    }
    if (best_iv < 0) {
      q.feasible = false;
      q.v_ref = v_q;
      return q;
    }
    q.v_ref = propagated(best_iv, best_it);
  }
  q.v_ref = std::clamp(q.v_ref, pol.v_min(), pol.v_max());
  return q;
}

Policy replan(const Policy& pol_prev, const VehicleParams& p, const Corridor& spat, const PlannerConfig& cfg,
              const PlanState& current, double position) {
  if (position > spat.length + kTol) throw BoundsError("replan: position beyond the route");
  (void)pol_prev;  // the previous policy stays published until the caller swaps
  Corridor shifted = spat;
  for (auto& light : shifted.intersections) light.offset = std::fmod(light.offset + current.t, light.cycle);
  const PlanState s{std::clamp(current.v, p.v_min_plan, p.v_max), 0.0};
  Policy pol = solve_dp(p, shifted, cfg, s, position);
  pol.set_t_origin(current.t);
  return pol;
}

std::vector<TrajectoryPoint> nominal_trajectory(const Policy& pol, const VehicleParams& p, const Corridor& c,
                                                const PlannerConfig& cfg) {
  std::vector<TrajectoryPoint> traj;
  PlanState s = pol.start_state();
  for (int k = pol.k_start(); k < pol.N(); ++k) {
    const BellmanChoice choice = best_torque(pol, p, c, cfg, k, s);
    if (!choice.feasible) throw NoFeasiblePlanError("nominal_trajectory: rollout left the feasible region");
    traj.push_back({pol.position(k), s.v, s.t, choice.torque});
    s = choice.next;
  }
  traj.push_back({pol.position(pol.N()), s.v, s.t, 0.0});
  return traj;
}

std::vector<PlannedCrossing> planned_crossings(const std::vector<TrajectoryPoint>& traj, const Corridor& c) {
  std::vector<PlannedCrossing> out;
  for (std::size_t i = 0; i < c.intersections.size(); ++i) {
    const double x = c.intersections[i].position;
    for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
      const auto& a = traj[n];
      const auto& b = traj[n + 1];
      if ((x > a.position || (n == 0 && x == a.position)) && x <= b.position) {
        const double frac = (x - a.position) / (b.position - a.position);
        out.push_back({i, a.t + (b.t - a.t) * frac});
        break;
      }
    }
  }
  return out;
}

void PolicyStore::publish(std::shared_ptr<const Policy> pol) {
  std::lock_guard lock(mu_);
  current_ = std::move(pol);
  ++generation_;
}

std::shared_ptr<const Policy> PolicyStore::snapshot() const {
  std::lock_guard lock(mu_);
  return current_;
}

std::uint64_t PolicyStore::generation() const {
  std::lock_guard lock(mu_);
  return generation_;
}

ReplanWorker::ReplanWorker(PolicyStore& store)
    : store_(store), thread_([this](std::stop_token st) { run(st); }) {}

ReplanWorker::~ReplanWorker() {
  thread_.request_stop();
  cv_.notify_all();
}

std::uint64_t ReplanWorker::submit(Job job) {
  std::lock_guard lock(mu_);
  const std::uint64_t ticket = ++submitted_;
  queue_.emplace_back(ticket, std::move(job));
  cv_.notify_all();
  return ticket;
}

void ReplanWorker::wait_for(std::uint64_t ticket) {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return completed_ >= ticket; });
}

std::optional<std::string> ReplanWorker::take_error() {
  std::lock_guard lock(mu_);
  auto e = std::move(error_);
  error_.reset();
  return e;
}

void ReplanWorker::run(std::stop_token st) {
  while (true) {
    std::pair<std::uint64_t, Job> item;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, st, [&] { return !queue_.empty(); });
      if (queue_.empty()) return;  // stop requested
      item = std::move(queue_.front());
      queue_.erase(queue_.begin());
    }
    std::optional<std::string> err;
    try {
      auto pol = item.second();
      if (pol) store_.publish(std::move(pol));
    } catch (const std::exception& e) {
      err = e.what();
    }
    {
      std::lock_guard lock(mu_);
      completed_ = item.first;
      if (err) error_ = std::move(err);
    }
    cv_.notify_all();
  }
}

nlohmann::json policy_metadata(const Policy& pol) {
  return {{"format", "ecoacc-policy-v1"},
          {"k_start", pol.k_start()},
          {"N", pol.N()},
          {"ds", pol.ds()},
          {"n_v", pol.n_v()},
          {"n_t", pol.n_t()},
          {"v_min", pol.v_min()},
          {"v_max", pol.v_max()},
          {"t_f", pol.t_f()},
          {"interpolation", pol.interpolation() == ValueInterpolation::bilinear ? "bilinear" : "nearest"},
          {"torque_grid", pol.torque_grid()},
          {"start", {{"v", pol.start_state().v}, {"t", pol.start_state().t}}},
          {"start_value", pol.start_value()},
          {"t_origin", pol.t_origin()}};
}

// Layout: u64 header length, JSON header, f64 values, i16 actions (little endian host order).
void write_policy_binary(const Policy& pol, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write policy dump: " + path);
  const std::string header = policy_metadata(pol).dump();
  const std::uint64_t len = header.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(header.data(), static_cast<std::streamsize>(len));
  out.write(reinterpret_cast<const char*>(pol.values().data()),
            static_cast<std::streamsize>(pol.values().size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(pol.actions().data()),
            static_cast<std::streamsize>(pol.actions().size() * sizeof(std::int16_t)));
  if (!out) throw IoError("failed writing policy dump: " + path);
}

Policy read_policy_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open policy dump: " + path);
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  if (!in || len > (1u << 24)) throw IoError("corrupt policy dump header: " + path);
  std::string header(len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(len));
  const auto meta = nlohmann::json::parse(header);
  VehicleParams p;
  p.v_min_plan = meta.at("v_min").get<double>();
  p.v_max = meta.at("v_max").get<double>();
  PlannerConfig cfg;
  cfg.N = meta.at("N").get<int>();
  cfg.ds = meta.at("ds").get<double>();
  cfg.n_v = meta.at("n_v").get<int>();
  cfg.n_t = meta.at("n_t").get<int>();
  cfg.t_f = meta.at("t_f").get<double>();
  cfg.torque_grid = meta.at("torque_grid").get<std::vector<double>>();
  cfg.interpolation =
      meta.at("interpolation").get<std::string>() == "nearest" ? ValueInterpolation::nearest : ValueInterpolation::bilinear;
  Policy pol(p, cfg, meta.at("k_start").get<int>());
  in.read(reinterpret_cast<char*>(pol.values().data()),
          static_cast<std::streamsize>(pol.values().size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(pol.actions().data()),
          static_cast<std::streamsize>(pol.actions().size() * sizeof(std::int16_t)));
  if (!in) throw IoError("truncated policy dump: " + path);
  pol.set_start({meta.at("start").at("v").get<double>(), meta.at("start").at("t").get<double>()},
                meta.at("start_value").get<double>());
  pol.set_t_origin(meta.value("t_origin", 0.0));
  return pol;
}

PlannerConfig planner_config_from_json(const nlohmann::json& j) {
  PlannerConfig cfg;
  try {
    cfg.ds = j.value("ds", cfg.ds);
    cfg.N = j.value("N", cfg.N);
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.lambda_unit = j.value("lambda_unit", cfg.lambda_unit);
    cfg.eta = j.value("eta", cfg.eta);
    cfg.t_f = j.value("t_f", cfg.t_f);
    cfg.n_v = j.value("n_v", cfg.n_v);
    cfg.n_t = j.value("n_t", cfg.n_t);
    cfg.crossing_margin = j.value("crossing_margin", cfg.crossing_margin);
    if (j.contains("torque_grid")) cfg.torque_grid = j.at("torque_grid").get<std::vector<double>>();
    const auto interp = j.value("interpolation", std::string("bilinear"));
    if (interp == "bilinear") {
      cfg.interpolation = ValueInterpolation::bilinear;
    } else if (interp == "nearest") {
      cfg.interpolation = ValueInterpolation::nearest;
    } else {
      throw ConfigError("planner config: unknown interpolation '" + interp + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("planner config: ") + e.what());
  }
  return cfg;
}

nlohmann::json to_json(const PlannerConfig& cfg) {
  return {{"ds", cfg.ds},
          {"N", cfg.N},
          {"lambda", cfg.lambda},
          {"lambda_unit", cfg.lambda_unit},
          {"eta", cfg.eta},
          {"t_f", cfg.t_f},
          {"n_v", cfg.n_v},
          {"n_t", cfg.n_t},
          {"crossing_margin", cfg.crossing_margin},
          {"torque_grid", cfg.torque_grid},
          {"interpolation", cfg.interpolation == ValueInterpolation::bilinear ? "bilinear" : "nearest"}};
}

}  // namespace ecoacc
