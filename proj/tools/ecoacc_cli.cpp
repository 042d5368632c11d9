// ecoacc: plan, simulate, compare, sweep and report on a signalized corridor.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ecoacc/config_io.hpp"
#include "ecoacc/errors.hpp"
#include "ecoacc/harness.hpp"

namespace fs = std::filesystem;
using namespace ecoacc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kUnsafe = 3, kIo = 4 };

struct ScenarioFlags {
  std::string config;
  double lambda = -1.0;
  double eta = -1.0;
  double t_f = -1.0;
  std::string traffic;
  std::string controller;
  double v_init = -1.0;
  bool fixed_offsets = false;

  void add(CLI::App* app) {
    app->add_option("-c,--config", config, "scenario JSON (defaults when omitted)");
    app->add_option("--lambda", lambda, "time-penalty weight");
    app->add_option("--eta", eta, "crossing reliability");
    app->add_option("--t-f", t_f, "planner time budget (s); the time grid keeps its spacing");
    app->add_option("--traffic", traffic, "none | idm")->check(CLI::IsMember({"none", "idm"}));
    app->add_option("--controller", controller, "eco-acc | acc-only | eco-acc-offline")
        ->check(CLI::IsMember({"eco-acc", "acc-only", "eco-acc-offline"}));
    app->add_option("--v-init", v_init, "initial speed (m/s)");
    app->add_flag("--fixed-offsets", fixed_offsets, "keep the corridor's nominal signal offsets");
  }

  Scenario build() const {
    Scenario scn;
    if (config.empty()) {
      scn.corridor = default_corridor();
    } else {
      scn = load_scenario(config);
    }
    if (lambda >= 0.0) scn.planner.lambda = lambda;
    if (eta >= 0.0) scn.planner.eta = eta;
    if (t_f > 0.0) {
      const double dt = scn.planner.dt_grid();
      scn.planner.t_f = t_f;
      scn.planner.n_t = static_cast<int>(std::lround(t_f / dt)) + 1;
    }
    if (!traffic.empty()) scn.traffic.mode = traffic == "idm" ? TrafficMode::idm : TrafficMode::none;
    if (!controller.empty()) scn.controller = controller_from_string(controller);
    if (v_init >= 0.0) scn.v_init = v_init;
    if (fixed_offsets) scn.randomize_offsets = false;
    scn.validate();
    return scn;
  }
};

struct SeedFlags {
  std::vector<std::uint64_t> seeds;
  std::uint64_t seed_start = 1;
  int n_seeds = 0;

  // simulate: --seed is mandatory; --runs extends it to consecutive seeds.
  void add_required(CLI::App* app) {
    app->add_option("--seed", seeds, "seed(s) to run")->required();
    app->add_option("--runs", n_seeds, "run this many consecutive seeds starting at the first --seed");
  }

  void add(CLI::App* app) {
    auto* list = app->add_option("--seed", seeds, "explicit seed list");
    auto* start = app->add_option("--seed-start", seed_start, "first seed of a range");
    auto* n = app->add_option("--seeds", n_seeds, "number of consecutive seeds from --seed-start");
    list->excludes(start)->excludes(n);
  }

  std::vector<std::uint64_t> list() const {
    if (!seeds.empty() && n_seeds <= 1) return seeds;
    const std::uint64_t first = seeds.empty() ? seed_start : seeds.front();
    std::vector<std::uint64_t> out;
    for (int i = 0; i < std::max(n_seeds, 1); ++i) out.push_back(first + static_cast<std::uint64_t>(i));
    return out;
  }
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void write_nominal_csv(const std::vector<TrajectoryPoint>& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "position,v,t,T_w\n";
  char buf[160];
  for (const auto& pt : traj) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.6f,%.6f,%.3f\n", pt.position, pt.v, pt.t, pt.T_w);
    out << buf;
  }
  if (!out) throw IoError("write failed: " + path);
}

int cmd_plan(const ScenarioFlags& sf, std::uint64_t seed, const std::string& out_dir) {
  Scenario scn = sf.build();
  scn.seed = seed;
  ensure_dir(out_dir);
  const EnvironmentRealization env = realize_environment(scn);
  const auto pol = pretrip_policy(scn);
  const auto traj = nominal_trajectory(*pol, scn.vehicle, env.corridor, scn.planner);
  write_policy_binary(*pol, join(out_dir, "policy.bin"));
  nlohmann::json meta = policy_metadata(*pol);
  meta["seed"] = seed;
  meta["corridor"] = to_json(env.corridor);
  meta["travel_time"] = traj.back().t;
  meta["crossings"] = nlohmann::json::array();
  for (const auto& pc : planned_crossings(traj, env.corridor)) {
    meta["crossings"].push_back({{"intersection", pc.intersection}, {"t_arrival", pc.t_arrival}});
  }
  write_json_file(meta, join(out_dir, "policy.json"));
  write_nominal_csv(traj, join(out_dir, "nominal.csv"));
  std::printf("plan seed=%llu cost=%.6g travel_time=%.2f s\n", static_cast<unsigned long long>(seed),
              pol->start_value(), traj.back().t);
  return kOk;
}

int cmd_simulate(const ScenarioFlags& sf, const SeedFlags& seeds, const std::string& out_dir) {
  const Scenario base = sf.build();
  ensure_dir(out_dir);
  const auto list = seeds.list();
  const bool single = list.size() == 1;
  std::vector<ExperimentReport> reports;
  int status = kOk;
  for (const auto seed : list) {
    Scenario scn = base;
    scn.seed = seed;
    const std::string tag = single ? "" : "_" + std::to_string(seed);
    SimTrace trace;
    try {
      trace = run_closed_loop(scn);
    } catch (const NoFeasiblePlanError& e) {
      std::fprintf(stderr, "seed %llu: %s\n", static_cast<unsigned long long>(seed), e.what());
      if (single) return kInfeasible;
      status = std::max(status, static_cast<int>(kInfeasible));
      continue;
    }
    write_trace_csv(trace, join(out_dir, "trace" + tag + ".csv"));
    write_json_file(summary_to_json(trace.summary), join(out_dir, "summary" + tag + ".json"));
    reports.push_back(make_report(trace));
    const auto& s = trace.summary;
    std::printf("seed=%llu %s completed=%d T=%.1f s E=%.4f kWh min_gap=%.2f red=%d fallback=%d/%d\n",
                static_cast<unsigned long long>(seed), to_string(scn.controller), s.completed ? 1 : 0,
                s.travel_time, s.wheel_energy_kwh, s.min_gap, s.red_crossings, s.fallback_steps, s.steps);
    if (!s.safe()) status = kUnsafe;
  }
  if (!single) write_reports_csv(reports, join(out_dir, "reports.csv"));
  return status;
}

int cmd_compare(const ScenarioFlags& sf, const std::string& baseline_config, const SeedFlags& seeds,
                const std::string& out_dir) {
  Scenario eco = sf.build();
  Scenario acc = eco;
  if (!baseline_config.empty()) acc = load_scenario(baseline_config);
  if (sf.controller.empty()) eco.controller = ControllerKind::eco_acc;
  if (baseline_config.empty()) acc.controller = ControllerKind::acc_only;
  ensure_dir(out_dir);
  const auto list = seeds.list();
  const Comparison cmp = compare_controllers(acc, eco, list);
  write_comparison_csv(cmp, join(out_dir, "comparison.csv"));
  std::printf("baseline=%s candidate=%s seeds=%zu excluded=%d\n", to_string(acc.controller),
              to_string(eco.controller), list.size(), cmp.excluded);
  std::printf("median energy delta %+.1f%%, median time delta %+.1f%% (mean %+.1f%%, %+.1f%%)\n",
              100.0 * cmp.median_energy_delta, 100.0 * cmp.median_time_delta, 100.0 * cmp.mean_energy_delta,
              100.0 * cmp.mean_time_delta);
  for (const auto& r : cmp.rows) {
    if (!r.a.safe || !r.b.safe) return kUnsafe;
  }
  return kOk;
}

int cmd_sweep(const ScenarioFlags& sf, std::vector<double> lambdas, const SeedFlags& seeds,
              const std::string& out_dir) {
  Scenario base = sf.build();
  if (sf.controller.empty()) base.controller = ControllerKind::eco_acc;
  ensure_dir(out_dir);
  const auto list = seeds.list();
  const SweepResult res = pareto_sweep(base, lambdas, list);
  write_sweep_csv(res, join(out_dir, "sweep.csv"));
  ReportInput in;
  for (const auto& row : res.rows) in.reports.push_back(row.report);
  emit_report(in, out_dir);
  for (const auto& a : res.aggregates) {
    std::printf("lambda=%g completed=%d/%d median_energy=%.4f kWh median_time=%.1f s\n", a.lambda, a.completed,
                a.runs, a.median_energy, a.median_travel_time);
  }
  for (const auto& row : res.rows) {
    if (!row.report.safe) return kUnsafe;
  }
  return kOk;
}

int cmd_report(const ScenarioFlags& sf, std::uint64_t seed, std::vector<std::string> controllers,
               const std::string& out_dir) {
  const Scenario base = sf.build();
  ensure_dir(out_dir);
  ReportInput in;
  int status = kOk;
  for (const auto& name : controllers) {
    Scenario scn = base;
    scn.seed = seed;
    scn.controller = controller_from_string(name);
    SimTrace trace = run_closed_loop(scn);
    if (in.corridor.intersections.empty()) in.corridor = realize_environment(scn).corridor;
    in.reports.push_back(make_report(trace));
    in.labels.push_back(name);
    if (!trace.summary.safe()) status = kUnsafe;
    in.traces.push_back(std::move(trace));
  }
  for (const auto& path : emit_report(in, out_dir)) std::printf("wrote %s\n", path.c_str());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eco-driving planner with a safety MPC on a signalized corridor"};
  app.require_subcommand(1);

  ScenarioFlags sf;
  SeedFlags seeds;
  std::string out_dir = ".";
  std::uint64_t seed = 1;

  auto* plan = app.add_subcommand("plan", "solve the pre-trip DP and export policy.bin, policy.json, nominal.csv");
  sf.add(plan);
  plan->add_option("--seed", seed, "signal-offset seed");
  plan->add_option("-o,--out", out_dir, "output directory");

  auto* sim = app.add_subcommand("simulate", "closed-loop runs; writes trace.csv and summary.json");
  sf.add(sim);
  seeds.add_required(sim);
  sim->add_option("-o,--out", out_dir, "output directory");

  std::string baseline;
  auto* cmp = app.add_subcommand("compare", "paired eco-acc vs baseline runs");
  sf.add(cmp);
  seeds.add(cmp);
  cmp->add_option("--baseline-config", baseline, "baseline scenario (default: same scenario, acc-only)");
  cmp->add_option("-o,--out", out_dir, "output directory");

  std::vector<double> lambdas{0, 25, 50, 65, 70, 100};
  auto* sweep = app.add_subcommand("sweep", "lambda sweep; writes sweep.csv and plots");
  sf.add(sweep);
  seeds.add(sweep);
  sweep->add_option("--lambdas", lambdas, "lambda grid")->delimiter(',');
  sweep->add_option("-o,--out", out_dir, "output directory");

  std::vector<std::string> controllers{"eco-acc", "acc-only"};
  auto* rep = app.add_subcommand("report", "runs controllers on one seed and emits CSV and SVG plots");
  sf.add(rep);
  rep->add_option("--seed", seed, "seed");
  rep->add_option("--controllers", controllers, "controllers to plot")->delimiter(',');
  rep->add_option("-o,--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*plan) return cmd_plan(sf, seed, out_dir);
    if (*sim) return cmd_simulate(sf, seeds, out_dir);
    if (*cmp) return cmd_compare(sf, baseline, seeds, out_dir);
    if (*sweep) return cmd_sweep(sf, lambdas, seeds, out_dir);
    if (*rep) return cmd_report(sf, seed, controllers, out_dir);
  } catch (const NoFeasiblePlanError& e) {
    std::cerr << "infeasible plan: " << e.what() << '\n';
    return kInfeasible;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
