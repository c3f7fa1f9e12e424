#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "core/market_data.hpp"
#include "core/qubo.hpp"

namespace msq {

enum class FormulationKind { proxy, proposed };

const char* to_string(FormulationKind kind);
FormulationKind formulation_kind_from_string(const std::string& name);

// Ordered positive coefficients mapping one asset's bit group to a
// continuous value: value = sum_k coeffs[k] * x_k in [0, max_value].
struct Discretization {
  std::vector<double> coeffs;
  double max_value = 0.0;  // = sum of coeffs

  int bits_per_asset() const { return int(coeffs.size()); }
  double min_coeff() const;
  void validate() const;
};

// Weight discretization d_k = 2^(k-1)/500 for k < K, d_K = 1 - sum; the
// coefficients sum to 1 so weights live on a 0.002 grid of [0, 1].
Discretization proxy_discretization(int K = 9);

// y discretization c_k = step * 2^(k-1) for k < H, c_H = 1/mu_min - sum,
// covering [0, 1/mu_min], the bound implied by mu^T y = 1 with mu > 0.
Discretization proposed_discretization(double mu_min, double step = 0.1,
                                       int H = 12);

// A built formulation: composed QUBO matrix plus everything needed to
// decode bitstrings back into portfolios.
struct QuboModel {
  QuboMatrix matrix;
  FormulationKind kind = FormulationKind::proxy;
  Discretization disc;
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  std::vector<std::string> assets;
  Eigen::VectorXd mu;
  Eigen::MatrixXd cov;
  double mu_min = 0.0;  // proposed only

  std::size_t num_assets() const { return assets.size(); }
  std::uint32_t num_variables() const { return matrix.size(); }

  // Feasibility tolerance: 1e-9 for proxy (the weight grid sums to 1
  // exactly); min coeff * min mu for proposed.
  double default_tolerance() const;
};

struct PortfolioSolution {
  Bits bits;
  Eigen::VectorXd weights;
  Eigen::VectorXd y;  // proposed only, empty otherwise
  double k = 0.0;     // proposed only, = e^T y
  std::optional<double> sharpe;
  bool feasible = false;
  double residual = 0.0;  // |sum w - 1| (proxy) or |mu^T y - 1| (proposed)
  double energy = 0.0;
};

// Q = lambda0 * H0 + lambda1 * H1 with
//   H0 = -sum_i a_i w_i + sum_{i<j} rho_ij w_i w_j,  a_i = mu_i / sigma_i
//   H1 = (sum_i w_i - 1)^2
// over w_i = sum_k d_k x_ik. Variables are indexed asset-major.
QuboModel build_proxy(const AssetStats& stats, const Discretization& disc,
                      double lambda0, double lambda1);

// Q = lambda0 * H0 + lambda1 * H1 with
//   H0 = y^T Sigma y,  H1 = (mu^T y - 1)^2
// over y_i = sum_k c_k x_ik. Requires all mu > 0 and disc built with
// mu_min = min(mu).
QuboModel build_proposed(const AssetStats& stats, const Discretization& disc,
                         double lambda0, double lambda1);

// w_i = sum_k d_k x_ik; residual = |sum w - 1|. Fills weights only.
PortfolioSolution decode_proxy(const Bits& bits, const Discretization& disc,
                               std::size_t num_assets);

// y_i = sum_k c_k x_ik, k = e^T y, w = y / k (k > 0); residual = |mu^T y - 1|.
PortfolioSolution decode_proposed(const Bits& bits, const Discretization& disc,
                                  const Eigen::VectorXd& mu);

// Residual test at the given tolerance; for proposed also requires k > 0 so
// the weights are defined.
bool feasibility(const PortfolioSolution& sol, FormulationKind kind,
                 double tolerance);

// w^T mu / sqrt(w^T Sigma w); no risk-free adjustment.
double sharpe_ratio(const Eigen::VectorXd& w, const Eigen::VectorXd& mu,
                    const Eigen::MatrixXd& cov);

// Full decode: weights, residual, feasibility at the model's default
// tolerance, Sharpe ratio and QUBO energy.
PortfolioSolution decode_solution(const QuboModel& model, const Bits& bits);

// Number of strictly positive weights.
int assets_selected(const PortfolioSolution& sol);

}  // namespace msq
