#include "ecoacc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "ecoacc/errors.hpp"

namespace ecoacc {

namespace {

std::string hex64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

const char* kPalette[] = {"#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

// Minimal SVG line-chart canvas with linear axes.
class Plot {
 public:
  Plot(double x0, double x1, double y0, double y1, std::string title, std::string xlabel, std::string ylabel)
      : x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1.0), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1.0) {
    body_ << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='15'>" << title << "</text>\n";
    body_ << "<text x='" << W / 2 << "' y='" << H - 8 << "' text-anchor='middle' font-size='12'>" << xlabel
          << "</text>\n";
    body_ << "<text x='14' y='" << H / 2 << "' transform='rotate(-90 14 " << H / 2
          << ")' text-anchor='middle' font-size='12'>" << ylabel << "</text>\n";
    axes();
  }

  double px(double x) const { return L + (x - x0_) / (x1_ - x0_) * (W - L - R); }
  double py(double y) const { return H - B - (y - y0_) / (y1_ - y0_) * (H - T - B); }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width = 1.5,
                const std::string& dash = "") {
    if (pts.empty()) return;
    body_ << "<polyline fill='none' stroke='" << color << "' stroke-width='" << width << "'";
    if (!dash.empty()) body_ << " stroke-dasharray='" << dash << "'";
    body_ << " points='";
    for (const auto& [x, y] : pts) body_ << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    body_ << "'/>\n";
  }

  void area(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
    if (pts.empty()) return;
    body_ << "<polygon fill='" << color << "' fill-opacity='0.35' stroke='" << color << "' points='";
    body_ << fmt(px(pts.front().first)) << ',' << fmt(py(y0_)) << ' ';
    for (const auto& [x, y] : pts) body_ << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    body_ << fmt(px(pts.back().first)) << ',' << fmt(py(y0_)) << "'/>\n";
  }

  void segment(double xa, double ya, double xb, double yb, const std::string& color, double width,
               const std::string& dash = "") {
    body_ << "<line x1='" << fmt(px(xa)) << "' y1='" << fmt(py(ya)) << "' x2='" << fmt(px(xb)) << "' y2='"
          << fmt(py(yb)) << "' stroke='" << color << "' stroke-width='" << width << "'";
    if (!dash.empty()) body_ << " stroke-dasharray='" << dash << "'";
    body_ << "/>\n";
  }

  void point(double x, double y, const std::string& color) {
    body_ << "<circle cx='" << fmt(px(x)) << "' cy='" << fmt(py(y)) << "' r='4' fill='" << color << "'/>\n";
  }

  void label(double x, double y, const std::string& text, const std::string& color = "#333") {
    body_ << "<text x='" << fmt(px(x) + 6) << "' y='" << fmt(py(y) - 6) << "' font-size='10' fill='" << color << "'>"
          << text << "</text>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = T + 14;
    for (const auto& [name, color] : entries) {
      body_ << "<rect x='" << W - R - 150 << "' y='" << y - 9 << "' width='12' height='3' fill='" << color << "'/>\n";
      body_ << "<text x='" << W - R - 132 << "' y='" << y - 4 << "' font-size='11'>" << name << "</text>\n";
      y += 16;
    }
  }

  void write(const std::string& path) const { write_stacked(path, {this}); }

  // Panels are drawn top to bottom in one file.
  static void write_stacked(const std::string& path, const std::vector<const Plot*>& panels) {
    auto out = open_out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H * panels.size()
        << "' font-family='sans-serif'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
      out << "<g transform='translate(0," << H * i << ")'>\n" << panels[i]->body_.str() << "</g>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("failed writing " + path);
  }

 private:
  static constexpr double W = 760, H = 420, L = 64, R = 20, T = 34, B = 46;

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
  }

  void axes() {
    body_ << "<rect x='" << L << "' y='" << T << "' width='" << W - L - R << "' height='" << H - T - B
          << "' fill='none' stroke='#444'/>\n";
    for (int i = 0; i <= 5; ++i) {
      const double x = x0_ + (x1_ - x0_) * i / 5.0;
      const double y = y0_ + (y1_ - y0_) * i / 5.0;
      body_ << "<text x='" << fmt(px(x)) << "' y='" << H - B + 15 << "' text-anchor='middle' font-size='10'>"
            << tick(x) << "</text>\n";
      body_ << "<text x='" << L - 6 << "' y='" << fmt(py(y) + 3) << "' text-anchor='end' font-size='10'>" << tick(y)
            << "</text>\n";
    }
  }

  static std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), std::abs(v) >= 100 ? "%.0f" : "%.3g", v);
    return buf;
  }

  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

void require_nonempty(const ReportInput& in) {
  if (in.reports.empty() && in.traces.empty()) throw Error("emit_report: nothing to report");
  for (const auto& tr : in.traces) {
    if (tr.records.empty()) throw Error("emit_report: empty trace");
  }
}

void plot_velocity(const ReportInput& in, const std::string& path) {
  double t_end = 1.0;
  double x_end = in.corridor.length;
  for (const auto& tr : in.traces) {
    t_end = std::max(t_end, tr.records.back().t);
    x_end = std::max(x_end, tr.records.back().position);
  }
  double v_top = 1.0;
  for (const auto& tr : in.traces) {
    for (const auto& r : tr.records) v_top = std::max(v_top, r.v);
  }
  Plot speed(0.0, x_end, 0.0, 1.1 * v_top, "Velocity profile", "distance (m)", "speed (m/s)");
  Plot time(0.0, x_end, 0.0, t_end, "Trajectory with red phases (dashed)", "distance (m)", "time (s)");
  for (const auto& light : in.corridor.intersections) {
    speed.segment(light.position, 0.0, light.position, 1.1 * v_top, "#bbbbbb", 1.0, "2,3");
    for (int c = -1;; ++c) {
      const double start = c * light.cycle + light.green + light.yellow - light.offset;
      if (start > t_end) break;
      const double end = start + light.red;
      if (end < 0.0) continue;
      time.segment(light.position, std::max(start, 0.0), light.position, std::min(end, t_end), "#d62728", 3.0, "5,3");
    }
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < in.traces.size(); ++i) {
    const std::string color = kPalette[i % 6];
    std::vector<std::pair<double, double>> xt, xv;
    for (const auto& r : in.traces[i].records) {
      xt.emplace_back(r.position, r.t);
      xv.emplace_back(r.position, r.v);
    }
    speed.polyline(xv, color, 1.6);
    time.polyline(xt, color, 1.8);
    legend.emplace_back(i < in.labels.size() ? in.labels[i] : "run " + std::to_string(i), color);
  }
  speed.legend(legend);
  time.legend({{"red phase", "#d62728"}});
  Plot::write_stacked(path, {&speed, &time});
}

void plot_energy(const ReportInput& in, const std::string& path) {
  double t_end = 1.0;
  double e_max = 1e-6;
  std::vector<std::vector<std::pair<double, double>>> series;
  for (const auto& tr : in.traces) {
    std::vector<std::pair<double, double>> s;
    double e = 0.0;
    for (const auto& r : tr.records) {
      e += std::max(r.T_w * r.v / tr.R_w, 0.0) * tr.t_s / 3.6e6;
      s.emplace_back(r.t, e);
    }
    t_end = std::max(t_end, tr.records.back().t);
    e_max = std::max(e_max, e);
    series.push_back(std::move(s));
  }
  Plot plot(0.0, t_end, 0.0, 1.1 * e_max, "Cumulative wheel energy", "time (s)", "energy (kWh)");
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string color = kPalette[i % 6];
    plot.area(series[i], color);
    legend.emplace_back(i < in.labels.size() ? in.labels[i] : "run " + std::to_string(i), color);
  }
  plot.legend(legend);
  plot.write(path);
}

void plot_pareto(const ReportInput& in, const std::string& path) {
  double t0 = std::numeric_limits<double>::infinity(), t1 = 0.0, e1 = 0.0;
  for (const auto& r : in.reports) {
    if (!r.completed) continue;
    t0 = std::min(t0, r.travel_time);
    t1 = std::max(t1, r.travel_time);
    e1 = std::max(e1, r.wheel_energy_kwh);
  }
  if (!std::isfinite(t0)) t0 = 0.0;
  const double pad = std::max(5.0, 0.05 * (t1 - t0));
  Plot plot(t0 - pad, t1 + pad, 0.0, 1.15 * std::max(e1, 1e-6), "Energy versus travel time", "travel time (s)",
            "wheel energy (kWh)");
  for (const auto& r : in.reports) {
    if (!r.completed) continue;
    const std::string color = r.controller == ControllerKind::acc_only ? "#d62728" : kPalette[0];
    plot.point(r.travel_time, r.wheel_energy_kwh, color);
    char buf[64];
    if (r.controller == ControllerKind::acc_only) {
      std::snprintf(buf, sizeof(buf), "acc-only");
    } else {
      std::snprintf(buf, sizeof(buf), "lambda=%g", r.lambda);
    }
    plot.label(r.travel_time, r.wheel_energy_kwh, buf);
  }
  plot.write(path);
}

}  // namespace

double wheel_energy(std::span<const TraceRecord> records, double R_w, double t_s) {
  double e = 0.0;
  for (const auto& r : records) e += std::max(r.T_w * r.v / R_w, 0.0) * t_s;
  return e / 3.6e6;
}

double wheel_energy(const SimTrace& trace) { return wheel_energy(trace.records, trace.R_w, trace.t_s); }

double equivalent_fuel(double elec_kwh) {
  if (elec_kwh < 0.0) throw BoundsError("equivalent_fuel: negative energy");
  return elec_kwh / kKwhPerGallon;
}

ExperimentReport make_report(const SimTrace& trace) {
  const RunSummary& s = trace.summary;
  ExperimentReport r;
  r.scenario_digest = hex64(s.environment_digest);
  r.seed = s.seed;
  r.controller = s.controller;
  r.lambda = s.lambda;
  r.completed = s.completed;
  r.travel_time = s.travel_time;
  r.wheel_energy_kwh = wheel_energy(trace);
  r.equivalent_fuel_gal = equivalent_fuel(r.wheel_energy_kwh);
  r.mean_speed = s.mean_speed;
  r.std_speed = s.std_speed;
  r.stop_count = s.stop_count;
  r.safe = s.safe();
  r.fallback_steps = s.fallback_steps;
  r.steps = s.steps;
  if (!s.abort_reason.empty()) r.error = s.abort_reason;
  return r;
}

double median(std::vector<double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

namespace {

ExperimentReport run_report(const Scenario& scn) {
  try {
    return make_report(run_closed_loop(scn));
  } catch (const std::exception& e) {
    ExperimentReport r;
    r.seed = scn.seed;
    r.controller = scn.controller;
    r.lambda = scn.planner.lambda;
    r.error = e.what();
    return r;
  }
}

}  // namespace

Comparison compare_controllers(const Scenario& a, const Scenario& b, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw ConfigError("compare_controllers: at least one seed is required");
  Comparison cmp;
  std::vector<double> de, dt;
  for (std::uint64_t seed : seeds) {
    Scenario sa = a;
    Scenario sb = b;
    sa.seed = seed;
    sb.seed = seed;
    ComparisonRow row;
    row.seed = seed;
    row.a = run_report(sa);
    row.b = run_report(sb);
    row.digest_match = row.a.scenario_digest == row.b.scenario_digest;
    row.excluded = !row.a.completed || !row.b.completed || !row.a.error.empty() || !row.b.error.empty();
    if (!row.excluded) {
      row.energy_delta = (row.b.wheel_energy_kwh - row.a.wheel_energy_kwh) / row.a.wheel_energy_kwh;
      row.time_delta = (row.b.travel_time - row.a.travel_time) / row.a.travel_time;
      de.push_back(row.energy_delta);
      dt.push_back(row.time_delta);
    } else {
      ++cmp.excluded;
    }
    cmp.rows.push_back(std::move(row));
  }
  if (!de.empty()) {
    double se = 0.0, st = 0.0;
    for (std::size_t i = 0; i < de.size(); ++i) {
      se += de[i];
      st += dt[i];
    }
    cmp.mean_energy_delta = se / static_cast<double>(de.size());
    cmp.mean_time_delta = st / static_cast<double>(dt.size());
    cmp.median_energy_delta = median(de);
    cmp.median_time_delta = median(dt);
  }
  return cmp;
}

SweepResult pareto_sweep(const Scenario& base, std::span<const double> lambdas, std::span<const std::uint64_t> seeds) {
  if (lambdas.empty()) throw ConfigError("pareto_sweep: lambda list is empty");
  if (seeds.empty()) throw ConfigError("pareto_sweep: at least one seed is required");
  std::vector<double> order(lambdas.begin(), lambdas.end());
  std::sort(order.begin(), order.end());
  std::vector<std::uint64_t> seed_order(seeds.begin(), seeds.end());
  std::sort(seed_order.begin(), seed_order.end());
  SweepResult out;
  for (double lambda : order) {
    SweepAggregate agg;
    agg.lambda = lambda;
    std::vector<double> e, t;
    for (std::uint64_t seed : seed_order) {
      Scenario scn = base;
      scn.planner.lambda = lambda;
      scn.seed = seed;
      SweepRow row{lambda, seed, run_report(scn)};
      ++agg.runs;
      if (row.report.completed && row.report.error.empty()) {
        ++agg.completed;
        e.push_back(row.report.wheel_energy_kwh);
        t.push_back(row.report.travel_time);
      }
      out.rows.push_back(std::move(row));
    }
    agg.median_energy = median(e);
    agg.median_travel_time = median(t);
    out.aggregates.push_back(agg);
  }
  return out;
}

void write_reports_csv(const std::vector<ExperimentReport>& reports, const std::string& path) {
  auto out = open_out(path);
  out << "seed,controller,lambda,completed,travel_time,wheel_energy_kwh,equivalent_fuel_gal,mean_speed,std_speed,"
         "stop_count,safe,fallback_steps,steps,scenario_digest,error\n";
  char buf[512];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%llu,%s,%g,%d,%.3f,%.6f,%.6f,%.4f,%.4f,%d,%d,%d,%d,%s,", static_cast<unsigned long long>(r.seed),
                  to_string(r.controller), r.lambda, r.completed ? 1 : 0, r.travel_time, r.wheel_energy_kwh,
                  r.equivalent_fuel_gal, r.mean_speed, r.std_speed, r.stop_count, r.safe ? 1 : 0, r.fallback_steps,
                  r.steps, r.scenario_digest.c_str());
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << buf << err << '\n';
  }
  if (!out) throw IoError("failed writing " + path);
}

void write_comparison_csv(const Comparison& cmp, const std::string& path) {
  auto out = open_out(path);
  out << "seed,controller_a,controller_b,energy_a_kwh,energy_b_kwh,time_a,time_b,energy_delta,time_delta,"
         "digest_match,excluded\n";
  char buf[512];
  for (const auto& r : cmp.rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%s,%s,%.6f,%.6f,%.3f,%.3f,%.6f,%.6f,%d,%d\n",
                  static_cast<unsigned long long>(r.seed), to_string(r.a.controller), to_string(r.b.controller),
                  r.a.wheel_energy_kwh, r.b.wheel_energy_kwh, r.a.travel_time, r.b.travel_time, r.energy_delta,
                  r.time_delta, r.digest_match ? 1 : 0, r.excluded ? 1 : 0);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path);
}

void write_sweep_csv(const SweepResult& sweep, const std::string& path) {
  auto out = open_out(path);
  out << "row_type,lambda,seed,completed,wheel_energy_kwh,travel_time,runs\n";
  char buf[256];
  for (const auto& r : sweep.rows) {
    std::snprintf(buf, sizeof(buf), "run,%g,%llu,%d,%.6f,%.3f,1\n", r.lambda, static_cast<unsigned long long>(r.seed),
                  r.report.completed ? 1 : 0, r.report.wheel_energy_kwh, r.report.travel_time);
    out << buf;
  }
  for (const auto& a : sweep.aggregates) {
    std::snprintf(buf, sizeof(buf), "median,%g,,%d,%.6f,%.3f,%d\n", a.lambda, a.completed, a.median_energy,
                  a.median_travel_time, a.runs);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path);
}

std::vector<std::string> emit_report(const ReportInput& in, const std::string& out_dir) {
  require_nonempty(in);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) throw IoError("cannot create report directory: " + out_dir);
  const std::filesystem::path dir(out_dir);
  std::vector<std::string> files;
  const std::string csv = (dir / "reports.csv").string();
  write_reports_csv(in.reports, csv);
  files.push_back(csv);
  const std::string vel = (dir / "velocity.svg").string();
  plot_velocity(in, vel);
  files.push_back(vel);
  const std::string en = (dir / "energy.svg").string();
  plot_energy(in, en);
  files.push_back(en);
  const std::string par = (dir / "pareto.svg").string();
  plot_pareto(in, par);
  files.push_back(par);
  return files;
}

}  // namespace ecoacc
