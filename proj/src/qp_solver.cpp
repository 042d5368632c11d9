#include "ecoacc/qp_solver.hpp"

#include <algorithm>
#include <cmath>

namespace ecoacc {

namespace {

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

}  // namespace

QpResult solve_qp(const QpProblem& qp, const QpSettings& settings) {
  const Eigen::Index n = qp.H.rows();
  const Eigen::Index m = qp.A.rows();
  QpResult res;
  res.x = Eigen::VectorXd::Zero(n);
  res.z = Eigen::VectorXd::Zero(m);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd Hreg = qp.H;
  Hreg.diagonal().array() += settings.regularization;

  if (m == 0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Hreg);
    x = ldlt.solve(-qp.c);
    res.status = x.allFinite() ? QpStatus::solved : QpStatus::numerical_error;
    res.x = x;
    res.objective = 0.5 * x.dot(qp.H * x) + qp.c.dot(x);
    return res;
  }

  Eigen::VectorXd s = (qp.b - qp.A * x).cwiseMax(1.0);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(m);
  if (settings.initial_z.size() == m) z = settings.initial_z.cwiseMax(1e-3);
  const double scale_p = 1.0 + qp.b.cwiseAbs().maxCoeff();

  Eigen::MatrixXd K(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (int iter = 0; iter < settings.max_iter; ++iter) {
    res.iterations = iter + 1;
    const Eigen::VectorXd r_d = qp.H * x + qp.c + qp.A.transpose() * z;
    const Eigen::VectorXd r_p = qp.A * x + s - qp.b;
    const double mu = s.dot(z) / static_cast<double>(m);
    res.primal_residual = r_p.cwiseAbs().maxCoeff();
    if (res.primal_residual <= settings.tol * scale_p && r_d.cwiseAbs().maxCoeff() <= settings.dual_tol &&
        mu <= settings.gap_tol) {
      res.status = QpStatus::solved;
      break;
    }

    const Eigen::VectorXd w = z.cwiseQuotient(s);
    K = Hreg;
    K.noalias() += qp.A.transpose() * w.asDiagonal() * qp.A;
    llt.compute(K);
    // Near convergence z/s spans many decades; retry with growing diagonal shifts.
    double shift = 1e-12 * (1.0 + K.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 8 && llt.info() != Eigen::Success; ++attempt) {
      K.diagonal().array() += shift;
      llt.compute(K);
      shift *= 100.0;
    }
    if (llt.info() != Eigen::Success) {
      res.status = QpStatus::numerical_error;
      break;
    }

    // Newton step for complementarity target r_c.
    auto newton = [&](const Eigen::VectorXd& r_c, Eigen::VectorXd& dx, Eigen::VectorXd& ds, Eigen::VectorXd& dz) {
      const Eigen::VectorXd inner = w.cwiseProduct(r_p) - r_c.cwiseQuotient(s);
      dx = llt.solve(-r_d - qp.A.transpose() * inner);
      dz = w.cwiseProduct(qp.A * dx + r_p) - r_c.cwiseQuotient(s);
      ds = -r_p - qp.A * dx;
    };

    Eigen::VectorXd dx, ds, dz;
    newton(s.cwiseProduct(z), dx, ds, dz);
    const double a_aff = std::min(max_step(s, ds), max_step(z, dz));
    const double mu_aff = (s + a_aff * ds).dot(z + a_aff * dz) / static_cast<double>(m);
    const double sigma = std::pow(mu_aff / mu, 3);

    const Eigen::VectorXd r_c = s.cwiseProduct(z) + ds.cwiseProduct(dz) - Eigen::VectorXd::Constant(m, sigma * mu);
    newton(r_c, dx, ds, dz);
    const double alpha = std::min(1.0, 0.99 * std::min(max_step(s, ds), max_step(z, dz)));
    x += alpha * dx;
    s += alpha * ds;
    z += alpha * dz;
    if (!x.allFinite()) {
      res.status = QpStatus::numerical_error;
      break;
    }
    res.status = QpStatus::max_iterations;
  }
  res.x = x;
  res.z = z;
  res.objective = 0.5 * x.dot(qp.H * x) + qp.c.dot(x);
  res.primal_residual = (qp.A * x - qp.b).cwiseMax(0.0).maxCoeff();
  return res;
}

}  // namespace ecoacc
