#include "ecoacc/vehicle_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ecoacc/errors.hpp"

namespace ecoacc {

void VehicleParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid vehicle params: ") + what);
  };
  require(m > 0.0, "m > 0");
  require(R_w > 0.0, "R_w > 0");
  require(A > 0.0, "A > 0");
  require(rho > 0.0, "rho > 0");
  require(g > 0.0, "g > 0");
  require(C_d >= 0.0 && C_r1 >= 0.0 && C_r2 >= 0.0, "resistance coefficients >= 0");
  require(T_w_min < 0.0 && T_w_max > 0.0, "T_w_min < 0 < T_w_max");
  require(a_min < 0.0 && a_max > 0.0, "a_min < 0 < a_max");
  require(v_min_plan > 0.0 && v_min_plan < v_max, "0 < v_min_plan < v_max");
}

double traction_accel(const VehicleParams& p, double v, double T_w, double theta) {
  if (v < 0.0) throw BoundsError("traction_accel: negative speed");
  if (T_w < p.T_w_min || T_w > p.T_w_max) {
    std::ostringstream os;
    os << "traction_accel: torque " << T_w << " outside [" << p.T_w_min << ", " << p.T_w_max << "]";
    throw BoundsError(os.str());
  }
  const double traction = T_w / (p.m * p.R_w);
  const double rolling = p.g * (std::cos(theta) * (p.C_r1 + p.C_r2 * v) - std::sin(theta));
  const double drag = p.rho * p.A * p.C_d * v * v / (2.0 * p.m);
  double a = traction - rolling - drag;
  if (v == 0.0 && traction <= p.g * p.C_r1) a = std::max(a, 0.0);
  return a;
}

PlanState step_space(const VehicleParams& p, const PlanState& s, double T_w, double ds) {
  if (ds == 0.0) return s;
  const double a = traction_accel(p, s.v, T_w);
  const double v_next = s.v + a * ds / s.v;
  if (!(v_next > 0.0)) throw StepInfeasibleError("step_space: speed would drop to zero within the step");
  return {v_next, s.t + ds / v_next};
}

double resistance_force(const VehicleParams& p, double v) {
  return p.m * p.g * p.C_r1 + 0.5 * p.rho * p.A * p.C_d * v * v;
}

AccState step_time(const VehicleParams& p, const AccState& s, double T_w, double v_f, double t_s) {
  AccState next;
  next.d_TL = s.d_TL - t_s * s.v;
  next.d_f = s.d_f + t_s * (v_f - s.v);
  next.v = std::max(0.0, s.v + (t_s / p.m) * (T_w / p.R_w - resistance_force(p, s.v)));
  return next;
}

BrakingLimits braking_limits(const VehicleParams& p) {
  BrakingLimits b;
  b.a_dec_max = p.T_w_min / (p.m * p.R_w) - p.g * p.C_r1;
  b.t_stop_max = -p.v_max / b.a_dec_max;
  return b;
}

VehicleParams vehicle_params_from_json(const nlohmann::json& j) {
  VehicleParams p;
  auto get = [&](const char* key, double& out) {
    if (!j.contains(key)) throw ConfigError(std::string("vehicle params: missing field '") + key + "'");
    out = j.at(key).get<double>();
  };
  get("m", p.m);
  get("R_w", p.R_w);
  get("A", p.A);
  get("C_d", p.C_d);
  get("C_r1", p.C_r1);
  get("C_r2", p.C_r2);
  get("rho", p.rho);
  get("g", p.g);
  get("T_w_min", p.T_w_min);
  get("T_w_max", p.T_w_max);
  get("a_min", p.a_min);
  get("a_max", p.a_max);
  get("v_min_plan", p.v_min_plan);
  get("v_max", p.v_max);
  p.validate();
  return p;
}

nlohmann::json to_json(const VehicleParams& p) {
  return {{"m", p.m},         {"R_w", p.R_w},         {"A", p.A},
          {"C_d", p.C_d},     {"C_r1", p.C_r1},       {"C_r2", p.C_r2},
          {"rho", p.rho},     {"g", p.g},             {"T_w_min", p.T_w_min},
          {"T_w_max", p.T_w_max}, {"a_min", p.a_min}, {"a_max", p.a_max},
          {"v_min_plan", p.v_min_plan}, {"v_max", p.v_max}};
}

VehicleParams load_vehicle_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vehicle params file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("vehicle params file " + path + ": " + e.what());
  }
  return vehicle_params_from_json(j);
}

}  // namespace ecoacc
