#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

namespace ecoacc {

// Physical constants of the longitudinal model, SI units throughout.
// Wheel torque convention: traction force = T_w / R_w.
struct VehicleParams {
  double m = 1600.0;       // kg
  double R_w = 0.31;       // m
  double A = 2.3;          // m^2
  double C_d = 0.30;
  double C_r1 = 0.01;
  double C_r2 = 2.0e-4;    // s/m
  double rho = 1.2;        // kg/m^3
  double g = 9.81;         // m/s^2
  double T_w_min = -3000.0;  // N*m
  double T_w_max = 2000.0;   // N*m
  double a_min = -3.0;     // m/s^2
  double a_max = 2.0;      // m/s^2
  double v_min_plan = 1.0; // m/s
  double v_max = 15.0;     // m/s

  // Throws ConfigError naming the first violated invariant.
  void validate() const;
};

// Planner state at a spatial node.
struct PlanState {
  double v = 0.0;  // m/s
  double t = 0.0;  // s
};

// ACC / plant state.
struct AccState {
  double d_TL = 0.0;  // distance to upcoming stop bar (m)
  double d_f = 0.0;   // gap to front vehicle (m)
  double v = 0.0;     // m/s
};

struct BrakingLimits {
  double a_dec_max = 0.0;   // m/s^2, strictly negative
  double t_stop_max = 0.0;  // s
};

/// Longitudinal acceleration for wheel torque T_w at speed v on grade theta.
/// A stationary vehicle whose traction cannot beat rolling resistance stays put.
/// Throws BoundsError when T_w is outside [T_w_min, T_w_max] or v < 0.
double traction_accel(const VehicleParams& p, double v, double T_w, double theta = 0.0);

/// One spatial step of the planner dynamics (explicit in position).
/// Throws StepInfeasibleError when the step would bring the speed to <= 0.
PlanState step_space(const VehicleParams& p, const PlanState& s, double T_w, double ds);

/// One sample of the ACC model. Resistance uses the constant rolling
/// coefficient; speed is clamped at zero.
AccState step_time(const VehicleParams& p, const AccState& s, double T_w, double v_f, double t_s);

/// Total resistance force of the ACC model (flat road, constant C_r1), N.
double resistance_force(const VehicleParams& p, double v);

BrakingLimits braking_limits(const VehicleParams& p);

VehicleParams vehicle_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VehicleParams& p);
VehicleParams load_vehicle_params(const std::string& path);

}  // namespace ecoacc
