#include "ecoacc/signal_corridor.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ecoacc/errors.hpp"
#include "ecoacc/random.hpp"
#include "ecoacc/vehicle_model.hpp"

namespace ecoacc {

namespace {

constexpr double kTimingTol = 1e-9;
constexpr double kCdfTol = 1e-12;

}  // namespace

DelayDistribution::DelayDistribution(std::vector<double> support, std::vector<double> pmf)
    : support_(std::move(support)), pmf_(std::move(pmf)) {
  if (support_.empty()) throw ConfigError("delay distribution: empty support");
  if (support_.size() != pmf_.size()) throw ConfigError("delay distribution: support/pmf size mismatch");
  double total = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (support_[k] < 0.0) throw ConfigError("delay distribution: negative support value");
    if (k > 0 && !(support_[k] > support_[k - 1])) throw ConfigError("delay distribution: support not ascending");
    if (pmf_[k] < 0.0) throw ConfigError("delay distribution: negative probability");
    total += pmf_[k];
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("delay distribution: probabilities do not sum to 1");
  cdf_.resize(pmf_.size());
  std::partial_sum(pmf_.begin(), pmf_.end(), cdf_.begin());
  cdf_.back() = 1.0;
}

DelayDistribution DelayDistribution::point_mass(double value) { return DelayDistribution({value}, {1.0}); }

double DelayDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) m += support_[k] * pmf_[k];
  return m;
}

double DelayDistribution::stddev() const {
  const double mu = mean();
  double var = 0.0;
  for (std::size_t k = 0; k < support_.size(); ++k) var += pmf_[k] * (support_[k] - mu) * (support_[k] - mu);
  return std::sqrt(var);
}

double DelayDistribution::max_value() const { return support_.empty() ? 0.0 : support_.back(); }

double DelayDistribution::sample(std::mt19937_64& rng) const {
  if (support_.empty()) throw ConfigError("delay distribution: cannot sample an empty distribution");
  const double u = uniform01(rng);
  for (std::size_t k = 0; k < cdf_.size(); ++k) {
    if (u < cdf_[k]) return support_[k];
  }
  return support_.back();
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::green:
      return "green";
    case Phase::yellow:
      return "yellow";
    case Phase::red:
      return "red";
  }
  return "?";
}

void Intersection::validate() const {
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << "intersection at " << position << " m: " << what;
    throw ConfigError(os.str());
  };
  if (!(cycle > 0.0)) fail("cycle must be positive");
  if (red < 0.0 || green < 0.0 || yellow < 0.0) fail("phase durations must be nonnegative");
  if (std::abs(red + green + yellow - cycle) > 1e-6) fail("red + green + yellow must equal the cycle");
  if (delay.empty()) fail("missing delay distribution");
  if (delay.max_value() > green + kTimingTol) fail("delay support exceeds the green duration");
}

void Corridor::validate() const {
  if (!(length > 0.0)) throw ConfigError("corridor length must be positive");
  double prev = -1.0;
  for (const auto& i : intersections) {
    i.validate();
    if (i.position < 0.0 || !(i.position > prev)) throw ConfigError("intersection positions must be strictly increasing");
    if (!(i.position < length)) throw ConfigError("intersection beyond corridor end");
    prev = i.position;
  }
}

void Corridor::validate(const VehicleParams& vehicle) const {
  validate();
  const double t_stop = braking_limits(vehicle).t_stop_max;
  for (const auto& i : intersections) {
    if (i.yellow + kTimingTol < t_stop) {
      std::ostringstream os;
      os << "intersection at " << i.position << " m: yellow " << i.yellow << " s shorter than t_stop_max " << t_stop
         << " s";
      throw ConfigError(os.str());
    }
  }
}

double cycle_time(const Intersection& i, double t) {
  double tau = std::fmod(t + i.offset, i.cycle);
  if (tau < 0.0) tau += i.cycle;
  if (tau >= i.cycle) tau -= i.cycle;
  return tau;
}

PhaseState phase_at(const Intersection& i, double t) {
  const double tau = cycle_time(i, t);
  if (tau < i.green) return {Phase::green, i.green - tau};
  if (tau < i.green + i.yellow) return {Phase::yellow, i.green + i.yellow - tau};
  return {Phase::red, i.cycle - tau};
}

double remaining_red(const Intersection& i, double t_arrival) {
  const double tau = cycle_time(i, t_arrival);
  if (tau < i.green) return 0.0;
  return i.cycle - tau;
}

double delay_quantile(const DelayDistribution& d, double eta) {
  if (d.empty()) throw ConfigError("delay_quantile: empty distribution");
  if (eta < 0.0 || eta > 1.0) throw BoundsError("delay_quantile: eta outside [0, 1]");
  const double target = 1.0 - eta;
  const auto& cdf = d.cdf();
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    if (cdf[k] >= target - kCdfTol) return d.support()[k];
  }
  return d.support().back();
}

bool feasible_crossing_with_margin(const Intersection& i, double t_arrival, double delay_margin) {
  const double tau = cycle_time(i, t_arrival);
  return tau >= delay_margin && tau < i.green;
}

bool feasible_crossing(const Intersection& i, double t_arrival, double eta) {
  return feasible_crossing_with_margin(i, t_arrival, delay_quantile(i.delay, eta));
}

ScheduleSample sample_schedule(const Corridor& c, std::uint64_t seed, bool randomize_offsets) {
  ScheduleSample s;
  s.seed = seed;
  auto rng = make_rng(seed, stream::schedule);
  for (const auto& i : c.intersections) {
    s.offsets.push_back(randomize_offsets ? uniform01(rng) * i.cycle : i.offset);
    s.alpha.push_back(i.delay.sample(rng));
  }
  return s;
}

Corridor realize(const Corridor& c, const ScheduleSample& s) {
  Corridor out = c;
  for (std::size_t k = 0; k < out.intersections.size() && k < s.offsets.size(); ++k) {
    out.intersections[k].offset = s.offsets[k];
  }
  return out;
}

DelayDistribution fit_delay_distribution(std::span<const double> samples, double bin_width) {
  if (samples.empty()) throw ConfigError("fit_delay_distribution: no samples");
  if (!(bin_width > 0.0)) throw ConfigError("fit_delay_distribution: bin width must be positive");
  std::map<long, std::size_t> counts;
  for (double x : samples) {
    if (x < 0.0 || !std::isfinite(x)) throw ConfigError("fit_delay_distribution: delays must be finite and nonnegative");
    counts[static_cast<long>(std::floor(x / bin_width + 1e-9))] += 1;
  }
  std::vector<double> support;
  std::vector<double> pmf;
  const double n = static_cast<double>(samples.size());
  for (const auto& [bin, count] : counts) {
    support.push_back(static_cast<double>(bin) * bin_width);
    pmf.push_back(static_cast<double>(count) / n);
  }
  // Renormalize against accumulated rounding.
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (double& p : pmf) p /= total;
  return DelayDistribution(std::move(support), std::move(pmf));
}

DelayDistribution default_delay_distribution() {
  return DelayDistribution({0.0, 1.0, 2.0, 3.0, 4.0, 5.0}, {0.04, 0.32, 0.38, 0.18, 0.06, 0.02});
}

Corridor default_corridor() {
  struct Timing {
    double position, cycle, green, yellow;
  };
  static constexpr Timing kTimings[] = {
      {42.0, 60.0, 30.0, 4.0},   {351.0, 80.0, 40.0, 4.0},  {610.0, 70.0, 35.0, 4.0},
      {1190.0, 90.0, 45.0, 4.0}, {1509.0, 60.0, 28.0, 4.0}, {1764.0, 80.0, 38.0, 4.0},
      {2050.0, 70.0, 32.0, 4.0}, {2456.0, 90.0, 50.0, 4.0},
  };
  Corridor c;
  c.length = 2600.0;
  for (const auto& t : kTimings) {
    Intersection i;
    i.position = t.position;
    i.cycle = t.cycle;
    i.green = t.green;
    i.yellow = t.yellow;
    i.red = t.cycle - t.green - t.yellow;
    i.offset = 0.0;
    i.delay = default_delay_distribution();
    c.intersections.push_back(i);
  }
  return c;
}

std::vector<double> read_delay_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open delay samples file: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(std::stod(line.substr(first)));
    } catch (const std::exception&) {
      // tolerate a header row
      if (out.empty()) continue;
      throw ConfigError("delay samples file " + path + ": bad line '" + line + "'");
    }
  }
  return out;
}

Corridor corridor_from_json(const nlohmann::json& j, const std::string& base_dir) {
  Corridor c;
  try {
    c.length = j.at("length").get<double>();
    for (const auto& ji : j.at("intersections")) {
      Intersection i;
      i.position = ji.at("position").get<double>();
      i.cycle = ji.at("cycle").get<double>();
      i.red = ji.at("red").get<double>();
      i.green = ji.at("green").get<double>();
      i.yellow = ji.at("yellow").get<double>();
      i.offset = ji.value("offset", 0.0);
      if (ji.contains("delay")) {
        i.delay = DelayDistribution(ji.at("delay").at("support").get<std::vector<double>>(),
                                    ji.at("delay").at("pmf").get<std::vector<double>>());
      } else if (ji.contains("delay_csv")) {
        std::filesystem::path p = ji.at("delay_csv").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        const auto samples = read_delay_samples_csv(p.string());
        i.delay = fit_delay_distribution(samples, ji.value("delay_bin_width", 1.0));
      } else {
        throw ConfigError("intersection needs 'delay' or 'delay_csv'");
      }
      c.intersections.push_back(std::move(i));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("corridor: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const Corridor& c) {
  nlohmann::json j;
  j["length"] = c.length;
  j["intersections"] = nlohmann::json::array();
  for (const auto& i : c.intersections) {
    j["intersections"].push_back({{"position", i.position},
                                  {"cycle", i.cycle},
                                  {"red", i.red},
                                  {"green", i.green},
                                  {"yellow", i.yellow},
                                  {"offset", i.offset},
                                  {"delay", {{"support", i.delay.support()}, {"pmf", i.delay.pmf()}}}});
  }
  return j;
}

Corridor load_corridor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corridor file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("corridor file " + path + ": " + e.what());
  }
  return corridor_from_json(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace ecoacc
