#pragma once

#include <Eigen/Dense>
#include <optional>

#include "core/error.hpp"
#include "core/market_data.hpp"

namespace msq {

// Thrown when the iterative solver runs out of iterations; carries the last
// iterate for inspection.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate)
      : Error(ErrorCode::not_converged, what),
        last_iterate_(std::move(last_iterate)) {}

  const Eigen::VectorXd& last_iterate() const { return last_iterate_; }

 private:
  Eigen::VectorXd last_iterate_;
};

// Unconstrained tangency solution y = Sigma^-1 mu / (mu^T Sigma^-1 mu).
// nullopt when Sigma is numerically singular.
std::optional<Eigen::VectorXd> tangency_closed_form(const Eigen::VectorXd& mu,
                                                    const Eigen::MatrixXd& cov);

struct ProjectedGradientResult {
  Eigen::VectorXd y;
  int iterations = 0;
  double last_change = 0.0;
  bool converged = false;
};

// Minimizes y^T Sigma y over {mu^T y = 1, y >= 0}: fixed-step gradient
// descent, each iterate projected onto the feasible set by Dykstra's
// alternating projections between the hyperplane and the orthant.
ProjectedGradientResult projected_gradient_min_variance(
    const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov, int max_iters,
    double tol, std::optional<Eigen::VectorXd> y0 = std::nullopt);

// Exact projection helper, exposed for tests.
Eigen::VectorXd project_feasible(const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& mu,
                                 double tol = 1e-14, int max_iters = 10000);

// Max-Sharpe weights: the nonnegative closed-form tangency portfolio when it
// exists, otherwise projected gradient; w = y / (e^T y).
Eigen::VectorXd classical_max_sharpe(const AssetStats& stats,
                                     int max_iters = 100000,
                                     double tol = 1e-10);

}  // namespace msq
