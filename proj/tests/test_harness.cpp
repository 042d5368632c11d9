#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "ecoacc/config_io.hpp"
#include "ecoacc/errors.hpp"
#include "ecoacc/harness.hpp"
#include "oracles.hpp"

using namespace ecoacc;
namespace fs = std::filesystem;

namespace {

SimTrace constant_trace(double force, double v, double seconds, double t_s = 0.2) {
  SimTrace tr;
  tr.t_s = t_s;
  tr.R_w = 0.31;
  const int n = static_cast<int>(std::lround(seconds / t_s));
  for (int k = 0; k < n; ++k) {
    TraceRecord r;
    r.t = k * t_s;
    r.position = v * r.t;
    r.v = v;
    r.T_w = force * tr.R_w;
    tr.records.push_back(r);
  }
  tr.summary.completed = true;
  tr.summary.travel_time = seconds;
  return tr;
}

Scenario small_scenario() {
  Scenario s;
  s.corridor.length = 500.0;
  Intersection i;
  i.position = 300.0;
  i.delay = DelayDistribution({0.0, 3.0}, {0.7, 0.3});
  s.corridor.intersections = {i};
  s.planner.N = 50;
  s.planner.t_f = 150.0;
  s.planner.n_t = 151;
  s.hard_cap = 300.0;
  return s;
}

fs::path temp_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("ecoacc_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(WheelEnergy, ConstantForce) {
  EXPECT_NEAR(wheel_energy(constant_trace(1000.0, 10.0, 100.0)), oracle::kWheelEnergyKwh, 1e-12);
  EXPECT_EQ(wheel_energy(constant_trace(0.0, 10.0, 100.0)), 0.0);
  EXPECT_EQ(wheel_energy(constant_trace(-2000.0, 10.0, 100.0)), 0.0);
}

TEST(WheelEnergy, AdditiveOverSegments) {
  SimTrace tr = constant_trace(0.0, 0.0, 60.0);
  for (std::size_t k = 0; k < tr.records.size(); ++k) {
    tr.records[k].v = 5.0 + 4.0 * std::sin(0.05 * k);
    tr.records[k].T_w = 900.0 * std::cos(0.031 * k);
  }
  const double whole = wheel_energy(tr);
  const std::span<const TraceRecord> all(tr.records);
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, std::size_t{77}, tr.records.size()}) {
    const double parts = wheel_energy(all.first(cut), tr.R_w, tr.t_s) + wheel_energy(all.subspan(cut), tr.R_w, tr.t_s);
    EXPECT_DOUBLE_EQ(parts, whole) << cut;
  }
}

TEST(EquivalentFuel, Conversion) {
  EXPECT_DOUBLE_EQ(equivalent_fuel(33.7), 1.0);
  EXPECT_EQ(equivalent_fuel(0.0), 0.0);
  EXPECT_DOUBLE_EQ(equivalent_fuel(8.425), 0.25);
  EXPECT_THROW(equivalent_fuel(-1.0), BoundsError);
}

TEST(Median, OddEven) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

TEST(Compare, IdenticalConfigsGiveZeroDelta) {
  const Scenario s = small_scenario();
  const std::vector<std::uint64_t> seeds{1, 2};
  const Comparison cmp = compare_controllers(s, s, seeds);
  ASSERT_EQ(cmp.rows.size(), 2u);
  for (const auto& r : cmp.rows) {
    EXPECT_TRUE(r.digest_match);
    EXPECT_FALSE(r.excluded);
    EXPECT_EQ(r.energy_delta, 0.0);
    EXPECT_EQ(r.time_delta, 0.0);
  }
  EXPECT_EQ(cmp.median_energy_delta, 0.0);
}

TEST(Compare, AccOnlyIsFasterInFreeFlow) {
  Scenario eco = small_scenario();
  Scenario acc = eco;
  acc.controller = ControllerKind::acc_only;
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const Comparison cmp = compare_controllers(acc, eco, seeds);
  for (const auto& r : cmp.rows) {
    EXPECT_TRUE(r.digest_match);
    EXPECT_LE(r.a.travel_time, r.b.travel_time + 1e-9) << r.seed;
  }
  EXPECT_LT(cmp.median_energy_delta, 0.0);
}

TEST(Sweep, SingleRow) {
  const std::vector<double> lambdas{50.0};
  const std::vector<std::uint64_t> seeds{3};
  const SweepResult sw = pareto_sweep(small_scenario(), lambdas, seeds);
  ASSERT_EQ(sw.rows.size(), 1u);
  EXPECT_EQ(sw.rows[0].lambda, 50.0);
  EXPECT_EQ(sw.rows[0].seed, 3u);
  ASSERT_EQ(sw.aggregates.size(), 1u);
  EXPECT_EQ(sw.aggregates[0].completed, 1);
}

TEST(Report, OneRunGivesThreePlotsAndCsv) {
  const Scenario s = small_scenario();
  ReportInput in;
  in.traces.push_back(run_closed_loop(s));
  in.labels.push_back("eco-acc");
  in.reports.push_back(make_report(in.traces.back()));
  in.corridor = realize_environment(s).corridor;
  const fs::path dir = temp_dir("report");
  const auto files = emit_report(in, dir.string());
  int svg = 0, csv = 0;
  for (const auto& f : files) {
    ASSERT_TRUE(fs::exists(f)) << f;
    EXPECT_GT(fs::file_size(f), 0u);
    if (fs::path(f).extension() == ".svg") ++svg;
    if (fs::path(f).extension() == ".csv") ++csv;
  }
  EXPECT_EQ(svg, 3);
  EXPECT_EQ(csv, 1);

  // Rerunning gives the same CSV bytes.
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const std::string first = slurp(dir / "reports.csv");
  ReportInput again = in;
  again.traces = {run_closed_loop(s)};
  again.reports = {make_report(again.traces.back())};
  emit_report(again, dir.string());
  EXPECT_EQ(slurp(dir / "reports.csv"), first);
}

TEST(Report, EmptyInputAndBadDirectory) {
  EXPECT_THROW(emit_report(ReportInput{}, temp_dir("empty").string()), Error);
  ReportInput in;
  in.traces.push_back(constant_trace(100.0, 5.0, 10.0));
  in.labels.push_back("x");
  in.reports.push_back(make_report(in.traces.back()));
  in.corridor.length = 50.0;
  const fs::path blocker = temp_dir("blocker");
  std::ofstream(blocker.string()) << "file";
  EXPECT_THROW(emit_report(in, (blocker / "sub").string()), IoError);
  fs::remove(blocker);
}

TEST(ScenarioJson, RoundTrip) {
  Scenario s = small_scenario();
  s.seed = 9;
  s.controller = ControllerKind::eco_acc_offline;
  s.traffic.mode = TrafficMode::idm;
  const Scenario back = scenario_from_json(to_json(s), ".");
  EXPECT_EQ(back.seed, 9u);
  EXPECT_EQ(back.controller, ControllerKind::eco_acc_offline);
  EXPECT_EQ(back.traffic.mode, TrafficMode::idm);
  EXPECT_EQ(back.planner.N, 50);
  ASSERT_EQ(back.corridor.intersections.size(), 1u);
  EXPECT_EQ(back.corridor.intersections[0].position, 300.0);
}

TEST(ScenarioJson, MissingFileIsIoError) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), IoError);
  const fs::path bad = temp_dir("bad.json");
  std::ofstream(bad.string()) << "{ not json";
  EXPECT_THROW(load_scenario(bad.string()), ConfigError);
  fs::remove(bad);
}
