#pragma once

#include <Eigen/Dense>

namespace ecoacc {

// min 0.5 x'Hx + c'x  s.t.  A x <= b
struct QpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

struct QpSettings {
  int max_iter = 60;
  double tol = 1e-8;  // relative primal tolerance
  double dual_tol = 1e-7;
  double gap_tol = 1e-9;
  double regularization = 1e-10;
  // Optional starting multipliers (size must match A's rows).
  Eigen::VectorXd initial_z;
};

enum class QpStatus { solved, max_iterations, numerical_error };

struct QpResult {
  QpStatus status = QpStatus::numerical_error;
  Eigen::VectorXd x;
  Eigen::VectorXd z;  // multipliers of A x <= b
  double objective = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
};

/// Dense primal-dual interior point (Mehrotra predictor-corrector). H must be
/// positive semidefinite; the problem is assumed strictly feasible.
QpResult solve_qp(const QpProblem& qp, const QpSettings& settings = {});

}  // namespace ecoacc
