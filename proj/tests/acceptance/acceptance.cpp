// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.
//
// usage: acceptance <scenario.json> <path to ecoacc cli> [criterion ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../dp_enumeration.hpp"
#include "ecoacc/config_io.hpp"
#include "ecoacc/eco_planner.hpp"
#include "ecoacc/errors.hpp"
#include "ecoacc/harness.hpp"
#include "ecoacc/traffic_sim.hpp"
#include "ecoacc/vehicle_model.hpp"

namespace fs = std::filesystem;
using namespace ecoacc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  int id = 0;
  bool pass = false;
  std::string detail;
};

std::vector<Outcome> g_outcomes;

void record(int id, bool pass, const std::string& detail) {
  g_outcomes.push_back({id, pass, detail});
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Run {
  bool ok = false;  // pre-trip plan existed and the loop ran
  std::string error;
  SimTrace trace;
  std::shared_ptr<const Policy> pretrip;
};

Run run(Scenario scn, std::uint64_t seed, ControllerKind kind, TrafficMode traffic, bool keep_policy = false) {
  scn.seed = seed;
  scn.controller = kind;
  scn.traffic.mode = traffic;
  Run r;
  try {
    std::shared_ptr<const Policy> pol;
    if (kind != ControllerKind::acc_only) pol = pretrip_policy(scn);
    r.trace = run_closed_loop(scn, pol);
    if (keep_policy) r.pretrip = pol;
    r.ok = true;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int n) {
  std::vector<std::uint64_t> s;
  for (int i = 0; i < n; ++i) s.push_back(first + static_cast<std::uint64_t>(i));
  return s;
}

// Criteria 1 and 7 share the same batch.
void safety_and_fallback(const Scenario& base) {
  const auto t0 = Clock::now();
  int runs = 0, unsafe = 0, failed = 0, red = 0, gap = 0;
  long steps = 0, fallback = 0;
  int unsafe_fallback_runs = 0;
  double min_gap = kNoLeaderGap;
  for (std::uint64_t seed : seed_range(1, 100)) {
    const Run r = run(base, seed, ControllerKind::eco_acc, TrafficMode::idm);
    ++runs;
    if (!r.ok) {
      ++failed;
      std::printf("  seed %llu: %s\n", static_cast<unsigned long long>(seed), r.error.c_str());
      continue;
    }
    const auto& s = r.trace.summary;
    red += s.red_crossings;
    gap += s.gap_violations;
    if (!s.safe()) ++unsafe;
    if (s.fallback_steps > 0 && !s.safe()) ++unsafe_fallback_runs;
    min_gap = std::min(min_gap, s.min_gap);
    steps += s.steps;
    fallback += s.fallback_steps;
  }
  const double elapsed = seconds_since(t0);
  record(1, unsafe == 0 && failed == 0 && elapsed < 600.0,
         fmt("runs=%d failed=%d unsafe=%d red_crossings=%d gap_violations=%d min_gap=%.2f m elapsed=%.0f s "
             "(need 0 unsafe, < 600 s)",
             runs, failed, unsafe, red, gap, min_gap, elapsed));
  const double frac = steps > 0 ? static_cast<double>(fallback) / static_cast<double>(steps) : 1.0;
  record(7, frac <= 1e-3 && unsafe_fallback_runs == 0,
         fmt("fallback steps %ld / %ld = %.5f%% (need <= 0.1%%), unsafe runs with fallback=%d", fallback, steps,
             100.0 * frac, unsafe_fallback_runs));
}

struct Pair {
  bool valid = false;
  double de = 0.0;
  double dt = 0.0;
};

Pair paired(const Run& eco, const Run& acc) {
  Pair p;
  if (!eco.ok || !acc.ok || !eco.trace.summary.completed || !acc.trace.summary.completed) return p;
  const double e_eco = wheel_energy(eco.trace), e_acc = wheel_energy(acc.trace);
  p.valid = e_acc > 0.0;
  p.de = (e_eco - e_acc) / e_acc;
  p.dt = (eco.trace.summary.travel_time - acc.trace.summary.travel_time) / acc.trace.summary.travel_time;
  return p;
}

// Fraction of Monte Carlo delay draws for which the planned arrival falls in
// the effective red (the red phase or the queue-discharge part of green).
void chance_constraint(const Scenario& base, const std::vector<Run>& free_eco) {
  std::mt19937_64 rng(77);
  constexpr int kDraws = 10000;
  double worst = 0.0;
  int arrivals = 0;
  for (const Run& r : free_eco) {
    if (!r.ok || !r.pretrip) continue;
    Scenario scn = base;
    scn.seed = r.trace.summary.seed;
    const Corridor c = realize_environment(scn).corridor;
    const auto traj = nominal_trajectory(*r.pretrip, scn.vehicle, c, scn.planner);
    for (const auto& x : planned_crossings(traj, c)) {
      const Intersection& light = c.intersections[x.intersection];
      int hits = 0;
      for (int k = 0; k < kDraws; ++k) {
        if (!feasible_crossing_with_margin(light, x.t_arrival, light.delay.sample(rng))) ++hits;
      }
      worst = std::max(worst, static_cast<double>(hits) / kDraws);
      ++arrivals;
    }
  }
  const double eta = base.planner.eta;
  record(5, arrivals > 0 && worst <= eta + 0.02,
         fmt("planned arrivals=%d, worst effective-red frequency %.4f over %d draws (need <= eta + 0.02 = %.2f)",
             arrivals, worst, kDraws, eta + 0.02));
}

void energy_and_nonstop(const Scenario& base) {
  const auto seeds = seed_range(1, 20);
  std::vector<double> de_tr, dt_tr, de_ff, dt_ff;
  int excluded_tr = 0, excluded_ff = 0, moving = 0, eco_ff_runs = 0;
  double lowest_min_speed = 1e9;
  std::vector<Run> free_eco;
  for (std::uint64_t seed : seeds) {
    const Run eco = run(base, seed, ControllerKind::eco_acc, TrafficMode::idm);
    const Run acc = run(base, seed, ControllerKind::acc_only, TrafficMode::idm);
    const Pair p = paired(eco, acc);
    if (p.valid) {
      de_tr.push_back(p.de);
      dt_tr.push_back(p.dt);
    } else {
      ++excluded_tr;
    }
    Run eco_f = run(base, seed, ControllerKind::eco_acc, TrafficMode::none, true);
    const Run acc_f = run(base, seed, ControllerKind::acc_only, TrafficMode::none);
    const Pair q = paired(eco_f, acc_f);
    if (q.valid) {
      de_ff.push_back(q.de);
      dt_ff.push_back(q.dt);
    } else {
      ++excluded_ff;
    }
    if (eco_f.ok) {
      ++eco_ff_runs;
      const double vmin = eco_f.trace.summary.min_speed_post_start;
      lowest_min_speed = std::min(lowest_min_speed, vmin);
      if (eco_f.trace.summary.completed && vmin > 0.0) ++moving;
    }
    free_eco.push_back(std::move(eco_f));
  }
  const double me = de_tr.empty() ? 0.0 : median(de_tr), mt = dt_tr.empty() ? 1.0 : median(dt_tr);
  const double mf = de_ff.empty() ? 0.0 : median(de_ff), mtf = dt_ff.empty() ? 1.0 : median(dt_ff);
  const bool ok2 = de_tr.size() >= 20 && de_ff.size() >= 20 && -me >= 0.20 && mt <= 0.15 && -mf >= 0.25;
  record(2, ok2,
         fmt("traffic: median energy reduction %.1f%%, median time increase %.1f%% (%zu pairs, %d excluded); "
             "free flow: reduction %.1f%%, time %+.1f%% (%zu pairs) (need >= 20%%, <= 15%%, >= 25%%)",
             -100.0 * me, 100.0 * mt, de_tr.size(), excluded_tr, -100.0 * mf, 100.0 * mtf, de_ff.size()));
  const double share = static_cast<double>(moving) / static_cast<double>(seeds.size());
  record(3, share >= 0.95,
         fmt("free flow, eta=%.2f: %d / %zu seeds never stopped after start (%d ran), lowest minimum speed %.3f m/s "
             "(need >= 95%%)",
             base.planner.eta, moving, seeds.size(), eco_ff_runs, lowest_min_speed));
  chance_constraint(base, free_eco);
}

void enumeration_oracle() {
  std::mt19937_64 rng(90210);
  int checked = 0, feasible = 0, mismatches = 0;
  const auto t0 = Clock::now();
  // Draw until 30 instances have a feasible start; infeasible ones are checked too.
  for (int n = 0; n < 500 && feasible < 30; ++n) {
    const auto in = enumeration::random_instance(rng);
    const double ref = enumeration::enumerate(in);
    const PlanState start{enumeration::start_speed(in), 0.0};
    ++checked;
    if (std::isfinite(ref)) {
      ++feasible;
      try {
        if (solve_dp(in.p, in.c, in.cfg, start, 0.0).start_value() != ref) ++mismatches;
      } catch (const NoFeasiblePlanError&) {
        ++mismatches;
      }
    } else {
      try {
        solve_dp(in.p, in.c, in.cfg, start, 0.0);
        ++mismatches;
      } catch (const NoFeasiblePlanError&) {
      }
    }
  }
  record(4, mismatches == 0 && feasible >= 25,
         fmt("%d instances (%d feasible), %d mismatches, exact equality, %.2f s (need >= 25 feasible, 0 mismatches)",
             checked, feasible, mismatches, seconds_since(t0)));
}

void pareto(const Scenario& base) {
  const std::vector<double> lambdas{0, 25, 50, 65, 70, 100};
  Scenario scn = base;
  scn.traffic.mode = TrafficMode::idm;
  scn.controller = ControllerKind::eco_acc;
  const auto seeds = seed_range(1, 20);
  const SweepResult sw = pareto_sweep(scn, lambdas, seeds);
  bool energy_ok = true, time_ok = true;
  std::vector<double> drops;
  std::ostringstream os;
  for (std::size_t i = 0; i < sw.aggregates.size(); ++i) {
    const auto& a = sw.aggregates[i];
    os << fmt(" l=%g:E=%.4f,T=%.1f(%d/%d)", a.lambda, a.median_energy, a.median_travel_time, a.completed, a.runs);
    if (i == 0) continue;
    const auto& b = sw.aggregates[i - 1];
    if (a.median_energy < b.median_energy * 0.95) energy_ok = false;
    if (a.median_travel_time > b.median_travel_time) time_ok = false;
    drops.push_back(b.median_travel_time - a.median_travel_time);
  }
  // A cluster jump: one step of the grid carries at least half of the total
  // travel-time reduction and at least 2 s.
  const double total = sw.aggregates.front().median_travel_time - sw.aggregates.back().median_travel_time;
  const double biggest = drops.empty() ? 0.0 : *std::max_element(drops.begin(), drops.end());
  const bool jump = biggest >= 2.0 && biggest >= 0.5 * total;
  record(6, energy_ok && time_ok && jump,
         fmt("energy nondecreasing (5%% band): %s, time nonincreasing: %s, largest step drop %.1f s of %.1f s: %s;",
             energy_ok ? "yes" : "no", time_ok ? "yes" : "no", biggest, total, jump ? "jump" : "no jump") +
             os.str());
}

// Fixed torque profile over position: launch, cruise, coast, brake, relaunch.
double torque_at(double x) {
  if (x < 120.0) return 900.0;
  if (x < 300.0) return 250.0;
  if (x < 420.0) return 0.0;
  if (x < 480.0) return -600.0;
  return 500.0;
}

void model_consistency(const VehicleParams& p) {
  constexpr double kLength = 600.0, kDs = 1.0, kTs = 0.05, kV0 = 5.0;
  // Space domain.
  std::vector<double> v_space{kV0};
  PlanState s{kV0, 0.0};
  for (int k = 0; k < static_cast<int>(kLength / kDs); ++k) {
    s = step_space(p, s, torque_at(k * kDs), kDs);
    v_space.push_back(s.v);
  }
  // Time domain with the same plant equation.
  double x = 0.0, v = kV0, worst = 0.0;
  std::size_t node = 1;
  while (node < v_space.size()) {
    const double a = traction_accel(p, v, torque_at(x));
    const double x_next = x + v * kTs, v_next = std::max(0.0, v + a * kTs);
    while (node < v_space.size() && node * kDs <= x_next) {
      const double w = (node * kDs - x) / (x_next - x);
      worst = std::max(worst, std::abs(v + w * (v_next - v) - v_space[node]));
      ++node;
    }
    x = x_next;
    v = v_next;
    if (v <= 0.0) break;
  }
  const bool covered = node >= v_space.size();
  record(8, covered && worst <= 0.02 * p.v_max,
         fmt("max |v_space - v_time| = %.4f m/s over %.0f m (need <= %.3f = 2%% of v_max)", worst, kLength,
             0.02 * p.v_max));
}

void offline_fragility(const Scenario& base) {
  int online_done = 0, offline_done = 0, online_replans = 0;
  const auto seeds = seed_range(1, 20);
  for (std::uint64_t seed : seeds) {
    Scenario scn = base;
    scn.seed = seed;
    scn.traffic.mode = TrafficMode::idm;
    std::shared_ptr<const Policy> pol;
    try {
      pol = pretrip_policy(scn);
    } catch (const NoFeasiblePlanError&) {
      continue;
    }
    scn.controller = ControllerKind::eco_acc;
    const SimTrace on = run_closed_loop(scn, pol);
    scn.controller = ControllerKind::eco_acc_offline;
    const SimTrace off = run_closed_loop(scn, pol);
    if (on.summary.completed) ++online_done;
    online_replans += on.summary.replans;
    if (off.summary.completed) ++offline_done;
  }
  record(9, offline_done < online_done,
         fmt("with traffic over %zu seeds: online completed %d (%d replans), offline completed %d (need offline < "
             "online)",
             seeds.size(), online_done, online_replans, offline_done));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void determinism(const std::string& scenario_path, const std::string& cli) {
  const fs::path root = fs::temp_directory_path() / "ecoacc_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> bodies;
  int failures = 0;
  for (const char* tag : {"a", "b"}) {
    const fs::path out = root / tag;
    const std::string cmd =
        "\"" + cli + "\" simulate -c \"" + scenario_path + "\" --seed 7 -o \"" + out.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) ++failures;
    bodies.push_back(slurp(out / "trace.csv"));
  }
  const bool same = failures == 0 && !bodies[0].empty() && bodies[0] == bodies[1];
  record(10, same,
         fmt("two 'simulate --seed 7' runs: %zu and %zu bytes, %s", bodies[0].size(), bodies[1].size(),
             same ? "byte-identical" : (failures ? "cli failed" : "differ")));
  fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <scenario.json> <ecoacc cli> [criterion ...]\n", argv[0]);
    return 4;
  }
  const std::string scenario_path = argv[1], cli = argv[2];
  std::set<int> only;
  for (int i = 3; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](std::initializer_list<int> ids) {
    if (only.empty()) return true;
    for (int id : ids) {
      if (only.count(id)) return true;
    }
    return false;
  };

  Scenario base;
  try {
    base = load_scenario(scenario_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "cannot load scenario: %s\n", e.what());
    return 4;
  }

  if (want({4})) enumeration_oracle();
  if (want({8})) model_consistency(base.vehicle);
  if (want({10})) determinism(scenario_path, cli);
  if (want({1, 7})) safety_and_fallback(base);
  if (want({2, 3, 5})) energy_and_nonstop(base);
  if (want({9})) offline_fragility(base);
  if (want({6})) pareto(base);

  std::sort(g_outcomes.begin(), g_outcomes.end(), [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  std::printf("\nsummary\n");
  int failed = 0;
  for (const auto& o : g_outcomes) {
    std::printf("criterion %2d: %s\n", o.id, o.pass ? "PASS" : "FAIL");
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu criteria checked, %d failed\n", g_outcomes.size(), failed);
  return failed == 0 ? 0 : 1;
}
