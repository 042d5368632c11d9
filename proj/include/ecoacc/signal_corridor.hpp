#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ecoacc {

struct VehicleParams;

// Empirical distribution of the queue-induced crossing delay after green onset.
class DelayDistribution {
 public:
  DelayDistribution() = default;
  // Support must be ascending and nonnegative, pmf must sum to 1.
  DelayDistribution(std::vector<double> support, std::vector<double> pmf);

  static DelayDistribution point_mass(double value);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& pmf() const { return pmf_; }
  const std::vector<double>& cdf() const { return cdf_; }
  bool empty() const { return support_.empty(); }

  double mean() const;
  double stddev() const;
  double max_value() const;

  // Inverse transform draw.
  double sample(std::mt19937_64& rng) const;

 private:
  std::vector<double> support_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

enum class Phase { green, yellow, red };

const char* to_string(Phase phase);

struct PhaseState {
  Phase phase = Phase::green;
  double remaining = 0.0;  // s until the next phase change
};

// One signalized stop bar. Within a cycle the order is green -> yellow -> red;
// `offset` is the position inside the cycle at t = 0.
struct Intersection {
  double position = 0.0;
  double cycle = 60.0;
  double red = 25.0;
  double green = 30.0;
  double yellow = 5.0;
  double offset = 0.0;
  DelayDistribution delay;

  void validate() const;
};

struct Corridor {
  double length = 0.0;
  std::vector<Intersection> intersections;

  // Throws ConfigError on broken geometry or timing; when a vehicle is given
  // also checks that every yellow lasts at least the vehicle's t_stop_max.
  void validate() const;
  void validate(const VehicleParams& vehicle) const;
};

/// Phase of the light at absolute time t (s).
PhaseState phase_at(const Intersection& i, double t);

/// Seconds until the next green onset; 0 while green. Yellow counts as red.
double remaining_red(const Intersection& i, double t_arrival);

/// Generalized inverse F^-1(1 - eta): smallest support value x with CDF(x) >= 1 - eta.
double delay_quantile(const DelayDistribution& d, double eta);

/// Position of t inside the cycle, in [0, cycle), measured from green onset.
double cycle_time(const Intersection& i, double t);

/// Crossing admissibility with the chance-constraint margin `delay_margin`
/// (normally delay_quantile(i.delay, eta)): arrival must fall in green at least
/// `delay_margin` seconds after green onset.
bool feasible_crossing_with_margin(const Intersection& i, double t_arrival, double delay_margin);
bool feasible_crossing(const Intersection& i, double t_arrival, double eta);

struct ScheduleSample {
  std::uint64_t seed = 0;
  std::vector<double> alpha;    // realized queue delay per intersection (s)
  std::vector<double> offsets;  // realized phase offset per intersection (s)
};

/// Deterministic per-seed realization. Offsets are drawn uniformly over the
/// cycle when `randomize_offsets` is set, otherwise copied from the corridor.
ScheduleSample sample_schedule(const Corridor& c, std::uint64_t seed, bool randomize_offsets = true);

/// Corridor with realized offsets applied.
Corridor realize(const Corridor& c, const ScheduleSample& s);

/// Normalized histogram of delay samples. Bin j covers [j*w, (j+1)*w) and is
/// represented by its lower edge.
DelayDistribution fit_delay_distribution(std::span<const double> samples, double bin_width);

/// Default corridor: 2600 m with eight stop bars; timing is synthetic.
Corridor default_corridor();
/// Synthetic delay PMF with mean ~1.96 s and std ~1.03 s.
DelayDistribution default_delay_distribution();

// JSON: {"length":..,"intersections":[{"position":..,"cycle":..,"red":..,
// "green":..,"yellow":..,"offset":..,"delay":{"support":[..],"pmf":[..]}
// | "delay_csv":"path", "delay_bin_width":1.0}]}. Relative CSV paths resolve
// against `base_dir`.
Corridor corridor_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
nlohmann::json to_json(const Corridor& c);
Corridor load_corridor(const std::string& path);
std::vector<double> read_delay_samples_csv(const std::string& path);

}  // namespace ecoacc
