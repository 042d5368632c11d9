#include "ecoacc/acc_mpc.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "ecoacc/errors.hpp"
#include "ecoacc/qp_solver.hpp"

namespace ecoacc {

namespace {

constexpr double kTorqueScale = 1000.0;  // QP inputs are in kN*m

// a.u - (phi) - (eps) <= rhs
struct Row {
  Eigen::VectorXd a;
  int phi = -1;
  bool elastic = false;
  double rhs = 0.0;
};

}  // namespace

void MpcConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid MPC config: ") + what);
  };
  require(N_p >= 2, "N_p >= 2");
  require(t_s > 0.0, "t_s > 0");
  require(W_v >= 0.0 && W_u >= 0.0 && W_du >= 0.0 && W_phi >= 0.0 && W_phi_linear >= 0.0, "weights >= 0");
  require(W_phi > W_v, "W_phi must dominate W_v");
  require(d_min > 0.0, "d_min > 0");
  require(margin >= 0.0, "margin >= 0");
  require(elastic_penalty > 0.0 && infeasibility_tol > 0.0, "elastic settings > 0");
}

FrontPrediction predict_front(double v_f, int N_p, PredictionMode mode, double a_dec, double t_s) {
  FrontPrediction fp;
  fp.v_f.resize(static_cast<std::size_t>(std::max(N_p, 0)));
  const double step = std::abs(a_dec) * t_s;
  for (int l = 0; l < N_p; ++l) {
    const double v = mode == PredictionMode::constant ? v_f : v_f - step * l;
    fp.v_f[static_cast<std::size_t>(l)] = std::max(0.0, v);
  }
  return fp;
}

const char* to_string(MpcStatus s) {
  switch (s) {
    case MpcStatus::optimal:
      return "optimal";
    case MpcStatus::feasible_suboptimal:
      return "feasible-suboptimal";
    case MpcStatus::infeasible_safety_fallback:
      return "infeasible-safety-fallback";
  }
  return "unknown";
}

double MpcSolution::max_slack() const {
  double m = 0.0;
  for (double s : slack) m = std::max(m, s);
  return m;
}

double TerminalSets::stopping_distance(double v) const {
  if (v <= 0.0) return 0.0;
  const double n = std::floor(v / h);
  return t_s * ((n + 1.0) * v - h * n * (n + 1.0) / 2.0);
}

bool TerminalSets::in_C_TL(double d_TL, double v) const { return d_TL >= stopping_distance(v) - 1e-9; }

bool TerminalSets::in_C_f(double d_f, double v, double v_f) const {
  return d_f >= d_min + std::max(0.0, stopping_distance(v) - stopping_distance(v_f)) - 1e-9;
}

double continuous_braking_distance(double v, double b) {
  if (!(b > 0.0)) throw BoundsError("continuous_braking_distance: deceleration must be positive");
  return v * v / (2.0 * b);
}

double effective_braking(const VehicleParams& p) {
  const double drag_max = 0.5 * p.rho * p.A * p.C_d * p.v_max * p.v_max;
  return -braking_limits(p).a_dec_max - drag_max / p.m;
}

TerminalSets build_terminal_sets(double b, double v_max, const MpcConfig& cfg) {
  if (!(b > 0.0)) throw ConfigError("build_terminal_sets: braking authority must be positive");
  TerminalSets s;
  s.b = b;
  s.t_s = cfg.t_s;
  s.h = b * cfg.t_s;
  s.d_min = cfg.d_min;
  s.margin = cfg.margin;
  const int n_max = static_cast<int>(std::floor(1.05 * v_max / s.h)) + 1;
  for (int n = 0; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    s.pieces.emplace_back(cfg.t_s * (dn + 1.0), -cfg.t_s * s.h * dn * (dn + 1.0) / 2.0);
  }
  return s;
}

TerminalSets build_terminal_sets(const VehicleParams& p, const MpcConfig& cfg) {
  return build_terminal_sets(effective_braking(p), p.v_max, cfg);
}

MpcSolution solve_mpc(const VehicleParams& p, const MpcConfig& cfg, const AccState& x, const PhaseState& phase,
                      double v_ref, const FrontPrediction& front, double u_prev) {
  return solve_mpc(p, cfg, build_terminal_sets(p, cfg), x, phase, v_ref, front, u_prev);
}

MpcSolution solve_mpc(const VehicleParams& p, const MpcConfig& cfg, const TerminalSets& sets, const AccState& x,
                      const PhaseState& phase, double v_ref, const FrontPrediction& front, double u_prev) {
  if (!(x.v >= 0.0) || !std::isfinite(x.d_TL) || !std::isfinite(x.d_f)) throw BoundsError("solve_mpc: invalid state");
  if (v_ref < 0.0 || v_ref > p.v_max + 1e-9) throw BoundsError("solve_mpc: v_ref outside [0, v_max]");
  if (front.v_f.empty()) throw BoundsError("solve_mpc: empty front prediction");

  const int N = cfg.N_p;
  const double ts = cfg.t_s;
  const bool red = phase.phase == Phase::red;
  const bool yellow = phase.phase == Phase::yellow;
  auto vf = [&](int l) { return front.v_f[static_cast<std::size_t>(std::min<int>(l, static_cast<int>(front.v_f.size()) - 1))]; };

  // Linear model: v(l+1) = alpha v(l) + beta u(l) + gamma, drag tangent at the measured speed.
  const double k_drag = 0.5 * p.rho * p.A * p.C_d;
  const double F0 = p.m * p.g * p.C_r1;
  const double vbar = x.v;
  const double alpha = 1.0 - ts * 2.0 * k_drag * vbar / p.m;
  const double beta = ts * kTorqueScale / (p.m * p.R_w);
  const double gamma = -ts * (F0 - k_drag * vbar * vbar) / p.m;
  const double umin = p.T_w_min / kTorqueScale;
  const double umax = p.T_w_max / kTorqueScale;

  std::vector<double> v0(static_cast<std::size_t>(N + 1));
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N + 1, N);
  v0[0] = x.v;
  for (int l = 0; l < N; ++l) {
    v0[static_cast<std::size_t>(l + 1)] = alpha * v0[static_cast<std::size_t>(l)] + gamma;
    G.row(l + 1) = alpha * G.row(l);
    G(l + 1, l) += beta;
  }
  // Distances: d(l) = d0(l) + C.row(l) u
  std::vector<double> dTL0(static_cast<std::size_t>(N + 1)), df0(static_cast<std::size_t>(N + 1));
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N + 1, N);  // same coefficients for d_TL and d_f
  dTL0[0] = x.d_TL;
  df0[0] = x.d_f;
  for (int l = 0; l < N; ++l) {
    const auto i = static_cast<std::size_t>(l);
    dTL0[i + 1] = dTL0[i] - ts * v0[i];
    df0[i + 1] = df0[i] + ts * (vf(l) - v0[i]);
    C.row(l + 1) = C.row(l) - ts * G.row(l);
  }

  const int n_phi = yellow ? N : 0;
  const int nx = N + n_phi + 1;
  const int ie = N + n_phi;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nx, nx);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nx);

  const double s2 = kTorqueScale * kTorqueScale;
  for (int l = 1; l <= N; ++l) {
    const Eigen::VectorXd g = G.row(l).transpose();
    H.topLeftCorner(N, N).noalias() += 2.0 * cfg.W_v * g * g.transpose();
    c.head(N) += 2.0 * cfg.W_v * (v0[static_cast<std::size_t>(l)] - v_ref) * g;
  }
  for (int l = 0; l < N; ++l) H(l, l) += 2.0 * cfg.W_u * s2;
  const double wj = 2.0 * cfg.W_du * s2;
  for (int l = 1; l < N; ++l) {
    H(l, l) += wj;
    H(l - 1, l - 1) += wj;
    H(l, l - 1) -= wj;
    H(l - 1, l) -= wj;
  }
  if (cfg.penalize_first_move) {
    H(0, 0) += wj;
    c(0) -= wj * u_prev / kTorqueScale;
  }
  for (int j = 0; j < n_phi; ++j) {
    H(N + j, N + j) += 2.0 * cfg.W_phi;
    c(N + j) += cfg.W_phi_linear;
  }
  H(ie, ie) += 1e-6;
  c(ie) = cfg.elastic_penalty;

  std::vector<Row> rows;
  auto add = [&](Eigen::VectorXd a, double rhs, int phi, bool elastic) {
    // Drop rows that hold for every input in the box.
    double worst = 0.0;
    for (int j = 0; j < N; ++j) worst += std::max(a(j) * umin, a(j) * umax);
    if (worst <= rhs - 1e-9) return;
    rows.push_back({std::move(a), phi, elastic, rhs});
  };

  const double clear_f = cfg.d_min + cfg.margin;
  for (int l = 1; l <= N; ++l) {
    const auto i = static_cast<std::size_t>(l);
    const Eigen::VectorXd g = G.row(l).transpose();
    const Eigen::VectorXd cl = C.row(l).transpose();
    add(g, p.v_max - v0[i], -1, true);
    add(-g, v0[i], -1, true);
    add(-cl, df0[i] - clear_f, -1, true);
    if (red) add(-cl, dTL0[i] - cfg.margin, -1, true);
    if (yellow) add(-cl, dTL0[i] - cfg.margin, N + l - 1, false);
  }
  const auto iN = static_cast<std::size_t>(N);
  const Eigen::VectorXd gN = G.row(N).transpose();
  const Eigen::VectorXd cN = C.row(N).transpose();
  const Eigen::VectorXd g1 = G.row(1).transpose();
  const Eigen::VectorXd c1 = C.row(1).transpose();
  const double S_fN = sets.stopping_distance(vf(N));
  const double S_f1 = sets.stopping_distance(std::max(0.0, vf(0) - sets.h));
  for (const auto& [slope, icpt] : sets.pieces) {
    if (red || yellow) {
      add(slope * gN - cN, dTL0[iN] - cfg.margin - slope * v0[iN] - icpt, yellow ? N + N - 1 : -1, red);
    }
    add(slope * gN - cN, df0[iN] - clear_f - slope * v0[iN] - icpt + S_fN, -1, true);
    add(slope * g1 - c1, df0[1] - clear_f - slope * v0[1] - icpt + S_f1, -1, true);
  }

  const int m_rows = static_cast<int>(rows.size());
  const int m_total = m_rows + 2 * N + n_phi + 1;
  QpProblem qp;
  qp.H = std::move(H);
  qp.c = std::move(c);
  qp.A = Eigen::MatrixXd::Zero(m_total, nx);
  qp.b = Eigen::VectorXd::Zero(m_total);
  int r = 0;
  for (const auto& row : rows) {
    qp.A.row(r).head(N) = row.a.transpose();
    if (row.phi >= 0) qp.A(r, row.phi) = -1.0;
    if (row.elastic) qp.A(r, ie) = -1.0;
    qp.b(r) = row.rhs;
    ++r;
  }
  for (int j = 0; j < N; ++j) {
    qp.A(r, j) = 1.0;
    qp.b(r++) = umax;
    qp.A(r, j) = -1.0;
    qp.b(r++) = -umin;
  }
  for (int j = 0; j < n_phi; ++j) qp.A(r++, N + j) = -1.0;
  qp.A(r++, ie) = -1.0;

  QpSettings qs;
  qs.initial_z = Eigen::VectorXd::Ones(m_total);
  qs.initial_z(m_total - 1) = cfg.elastic_penalty;
  const QpResult res = solve_qp(qp, qs);
  const double eps = res.x.size() > ie ? res.x(ie) : 0.0;

  MpcSolution sol;
  sol.iterations = res.iterations;
  const bool usable = res.status != QpStatus::numerical_error && eps <= cfg.infeasibility_tol &&
                      res.primal_residual <= 1e-5;
  if (!usable) {
    sol.status = MpcStatus::infeasible_safety_fallback;
    sol.torque.assign(static_cast<std::size_t>(N), p.T_w_min);
    sol.slack.assign(static_cast<std::size_t>(N), 0.0);
    sol.states.push_back(x);
    for (int l = 0; l < N; ++l) sol.states.push_back(step_time(p, sol.states.back(), p.T_w_min, vf(l), ts));
    return sol;
  }
  sol.status = res.status == QpStatus::solved ? MpcStatus::optimal : MpcStatus::feasible_suboptimal;

  const Eigen::VectorXd u = res.x.head(N);
  sol.torque.resize(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    sol.torque[static_cast<std::size_t>(j)] = std::clamp(u(j) * kTorqueScale, p.T_w_min, p.T_w_max);
  }
  sol.slack.assign(static_cast<std::size_t>(N), 0.0);
  for (int j = 0; j < n_phi; ++j) sol.slack[static_cast<std::size_t>(j)] = std::max(0.0, res.x(N + j));

  const Eigen::VectorXd v = G * u;
  const Eigen::VectorXd d = C * u;
  for (int l = 0; l <= N; ++l) {
    const auto i = static_cast<std::size_t>(l);
    sol.states.push_back({dTL0[i] + d(l), df0[i] + d(l), v0[i] + v(l)});
  }
  for (int l = 0; l <= N; ++l) {
    const double e = sol.states[static_cast<std::size_t>(l)].v - v_ref;
    sol.terms.tracking += cfg.W_v * e * e;
  }
  for (int l = 0; l < N; ++l) {
    const double t = sol.torque[static_cast<std::size_t>(l)];
    sol.terms.input += cfg.W_u * t * t;
  }
  for (int l = 1; l < N; ++l) {
    const double du = sol.torque[static_cast<std::size_t>(l)] - sol.torque[static_cast<std::size_t>(l - 1)];
    sol.terms.jerk += cfg.W_du * du * du;
  }
  if (cfg.penalize_first_move) sol.terms.jerk += cfg.W_du * (sol.torque[0] - u_prev) * (sol.torque[0] - u_prev);
  for (double phi : sol.slack) sol.terms.slack += cfg.W_phi * phi * phi + cfg.W_phi_linear * phi;
  sol.cost = sol.terms.total();
  return sol;
}

MpcConfig mpc_config_from_json(const nlohmann::json& j) {
  MpcConfig cfg;
  try {
    cfg.N_p = j.value("N_p", cfg.N_p);
    cfg.t_s = j.value("t_s", cfg.t_s);
    cfg.W_v = j.value("W_v", cfg.W_v);
    cfg.W_u = j.value("W_u", cfg.W_u);
    cfg.W_du = j.value("W_du", cfg.W_du);
    cfg.W_phi = j.value("W_phi", cfg.W_phi);
    cfg.W_phi_linear = j.value("W_phi_linear", cfg.W_phi_linear);
    cfg.d_min = j.value("d_min", cfg.d_min);
    cfg.margin = j.value("margin", cfg.margin);
    cfg.penalize_first_move = j.value("penalize_first_move", cfg.penalize_first_move);
    cfg.elastic_penalty = j.value("elastic_penalty", cfg.elastic_penalty);
    cfg.infeasibility_tol = j.value("infeasibility_tol", cfg.infeasibility_tol);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("MPC config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const MpcConfig& cfg) {
  return {{"N_p", cfg.N_p},
          {"t_s", cfg.t_s},
          {"W_v", cfg.W_v},
          {"W_u", cfg.W_u},
          {"W_du", cfg.W_du},
          {"W_phi", cfg.W_phi},
          {"W_phi_linear", cfg.W_phi_linear},
          {"d_min", cfg.d_min},
          {"margin", cfg.margin},
          {"penalize_first_move", cfg.penalize_first_move},
          {"elastic_penalty", cfg.elastic_penalty},
          {"infeasibility_tol", cfg.infeasibility_tol}};
}

}  // namespace ecoacc
