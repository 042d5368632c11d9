#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecoacc/traffic_sim.hpp"

namespace ecoacc {

inline constexpr double kKwhPerGallon = 33.7;

/// Positive traction work sum(max(T_w v / R_w, 0) t_s), in kWh.
double wheel_energy(const SimTrace& trace);
double wheel_energy(std::span<const TraceRecord> records, double R_w, double t_s);

/// Gasoline-equivalent gallons for an electric energy amount.
double equivalent_fuel(double elec_kwh);

struct ExperimentReport {
  std::string scenario_digest;  // hex digest of the environment realization
  std::uint64_t seed = 0;
  ControllerKind controller = ControllerKind::eco_acc;
  double lambda = 0.0;
  bool completed = false;
  double travel_time = 0.0;
  double wheel_energy_kwh = 0.0;
  double equivalent_fuel_gal = 0.0;
  double mean_speed = 0.0;
  double std_speed = 0.0;
  int stop_count = 0;
  bool safe = true;
  int fallback_steps = 0;
  int steps = 0;
  std::string error;  // set when the run could not be executed
};

ExperimentReport make_report(const SimTrace& trace);

struct ComparisonRow {
  std::uint64_t seed = 0;
  ExperimentReport a;
  ExperimentReport b;
  bool digest_match = false;
  bool excluded = false;  // one of the runs is incomplete or failed
  double energy_delta = 0.0;  // (b - a) / a
  double time_delta = 0.0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  double mean_energy_delta = 0.0;
  double mean_time_delta = 0.0;
  double median_energy_delta = 0.0;
  double median_time_delta = 0.0;
  int excluded = 0;
};

/// Paired runs: both scenarios are evaluated on the same seeds, so signal and
/// traffic realizations coincide. Deltas are relative to `a`.
Comparison compare_controllers(const Scenario& a, const Scenario& b, std::span<const std::uint64_t> seeds);

struct SweepRow {
  double lambda = 0.0;
  std::uint64_t seed = 0;
  ExperimentReport report;
};

struct SweepAggregate {
  double lambda = 0.0;
  int runs = 0;
  int completed = 0;
  double median_energy = 0.0;
  double median_travel_time = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;            // ordered by (lambda, seed)
  std::vector<SweepAggregate> aggregates;  // one per lambda, over completed runs
};

SweepResult pareto_sweep(const Scenario& base, std::span<const double> lambdas, std::span<const std::uint64_t> seeds);

double median(std::vector<double> xs);

void write_reports_csv(const std::vector<ExperimentReport>& reports, const std::string& path);
void write_comparison_csv(const Comparison& cmp, const std::string& path);
void write_sweep_csv(const SweepResult& sweep, const std::string& path);

struct ReportInput {
  std::vector<ExperimentReport> reports;
  std::vector<SimTrace> traces;  // plotted runs, paired with `labels`
  std::vector<std::string> labels;
  Corridor corridor;             // realized corridor used for red-phase bands
};

/// Writes reports.csv and velocity.svg, energy.svg, pareto.svg into out_dir.
/// Returns the written paths. Throws IoError when out_dir is not writable.
std::vector<std::string> emit_report(const ReportInput& in, const std::string& out_dir);

}  // namespace ecoacc
