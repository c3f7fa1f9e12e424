#include "core/classical.hpp"

#include <cmath>

namespace msq {

std::optional<Eigen::VectorXd> tangency_closed_form(
    const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  Eigen::VectorXd sol = ldlt.solve(mu);
  const double denom = mu.dot(sol);
  if (!std::isfinite(denom) || denom <= 0.0) return std::nullopt;
  Eigen::VectorXd y = sol / denom;
  if (!y.allFinite()) return std::nullopt;
  // Reject solves degraded by near-singularity.
  const double residual = (cov * sol - mu).norm();
  if (residual > 1e-8 * std::max(1.0, mu.norm())) return std::nullopt;
  return y;
}

Eigen::VectorXd project_feasible(const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& mu, double tol,
                                 int max_iters) {
  const double mu_norm2 = mu.squaredNorm();
  if (!(mu_norm2 > 0.0))
    throw Error(ErrorCode::invalid_argument, "mu must be nonzero");

  Eigen::VectorXd z = v;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(v.size());
  Eigen::VectorXd q = Eigen::VectorXd::Zero(v.size());
  for (int it = 0; it < max_iters; ++it) {
    // Hyperplane {mu^T y = 1}.
    Eigen::VectorXd u = z + p;
    Eigen::VectorXd z1 = u - ((mu.dot(u) - 1.0) / mu_norm2) * mu;
    p = u - z1;
    // Nonnegative orthant.
    Eigen::VectorXd t = z1 + q;
    Eigen::VectorXd z2 = t.cwiseMax(0.0);
    q = t - z2;
    const double change = (z2 - z).lpNorm<Eigen::Infinity>();
    z = std::move(z2);
    if (change < tol && std::abs(mu.dot(z) - 1.0) < 1e-10) break;
  }
  return z;
}

ProjectedGradientResult projected_gradient_min_variance(
    const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov, int max_iters,
    double tol, std::optional<Eigen::VectorXd> y0) {
  const auto n = mu.size();
  if (cov.rows() != n || cov.cols() != n)
    throw Error(ErrorCode::invalid_argument, "dimension mismatch");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(mu(i) > 0.0))
      throw Error(ErrorCode::assumption_violated,
                  "classical solver requires positive expected returns");

  // Gershgorin bound on the largest eigenvalue gives a safe 1/L step.
  const double row_bound = cov.cwiseAbs().rowwise().sum().maxCoeff();
  const double step = row_bound > 0.0 ? 1.0 / (2.0 * row_bound) : 1.0;

  Eigen::VectorXd y;
  if (y0) {
    y = project_feasible(*y0, mu);
  } else {
    y = Eigen::VectorXd::Constant(n, 1.0 / mu.sum());  // mu^T y = 1, y > 0
  }

  ProjectedGradientResult result;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd gradient = 2.0 * (cov * y);
    Eigen::VectorXd next = project_feasible(y - step * gradient, mu);
    result.last_change = (next - y).lpNorm<Eigen::Infinity>();
    y = std::move(next);
    result.iterations = it + 1;
    if (result.last_change < tol) {
      result.converged = true;
      break;
    }
  }
  result.y = std::move(y);
  return result;
}

Eigen::VectorXd classical_max_sharpe(const AssetStats& stats, int max_iters,
                                     double tol) {
  const auto n = stats.mu.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "no assets");
  if (n == 1) return Eigen::VectorXd::Ones(1);

  auto closed = tangency_closed_form(stats.mu, stats.cov);
  if (closed) {
    Eigen::VectorXd y = *closed;
    const double scale = y.cwiseAbs().maxCoeff();
    if (y.minCoeff() >= -1e-12 * scale) {
      y = y.cwiseMax(0.0);
      return y / y.sum();
    }
  }

  auto pg = projected_gradient_min_variance(stats.mu, stats.cov, max_iters,
                                            tol, std::nullopt);
  if (!pg.converged)
    throw ConvergenceError("projected gradient did not converge (last change " +
                               std::to_string(pg.last_change) + ")",
                           pg.y);
  const double total = pg.y.sum();
  if (!(total > 0.0))
    throw Error(ErrorCode::internal, "degenerate projected-gradient iterate");
  return pg.y / total;
}

}  // namespace msq
