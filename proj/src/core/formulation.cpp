#include "core/formulation.hpp"

#include <algorithm>
#include <cmath>

namespace msq {

const char* to_string(FormulationKind kind) {
  return kind == FormulationKind::proxy ? "proxy" : "proposed";
}

FormulationKind formulation_kind_from_string(const std::string& name) {
  if (name == "proxy") return FormulationKind::proxy;
  if (name == "proposed") return FormulationKind::proposed;
  throw Error(ErrorCode::invalid_argument, "unknown formulation: " + name);
}

double Discretization::min_coeff() const {
  return *std::min_element(coeffs.begin(), coeffs.end());
}

void Discretization::validate() const {
  if (coeffs.empty())
    throw Error(ErrorCode::invalid_argument, "discretization is empty");
  double sum = 0.0;
  for (double c : coeffs) {
    if (!(c > 0.0))
      throw Error(ErrorCode::invalid_argument,
                  "discretization coefficients must be positive");
    sum += c;
  }
  if (std::abs(sum - max_value) > 1e-12 * std::max(1.0, std::abs(sum)))
    throw Error(ErrorCode::invalid_argument,
                "max_value does not match coefficient sum");
}

Discretization proxy_discretization(int K) {
  if (K < 2)
    throw Error(ErrorCode::invalid_argument, "proxy discretization needs K >= 2");
  Discretization disc;
  double partial = 0.0;
  for (int k = 1; k < K; ++k) {
    const double d = std::ldexp(1.0, k - 1) / 500.0;  // 2^(k-1)/500
    disc.coeffs.push_back(d);
    partial += d;
  }
  const double tail = 1.0 - partial;
  if (!(tail > 0.0))
    throw Error(ErrorCode::discretization_bound,
                "residual coefficient is not positive; reduce K");
  disc.coeffs.push_back(tail);
  disc.max_value = partial + tail;
  disc.validate();
  return disc;
}

Discretization proposed_discretization(double mu_min, double step, int H) {
  if (!(mu_min > 0.0))
    throw Error(ErrorCode::invalid_argument, "mu_min must be positive");
  if (!(step > 0.0) || H < 2)
    throw Error(ErrorCode::invalid_argument,
                "proposed discretization needs step > 0 and H >= 2");
  const double bound = 1.0 / mu_min;
  Discretization disc;
  double partial = 0.0;
  for (int k = 1; k < H; ++k) {
    const double c = step * std::ldexp(1.0, k - 1);
    disc.coeffs.push_back(c);
    partial += c;
  }
  const double tail = bound - partial;
  if (!(tail > 0.0))
    throw Error(ErrorCode::discretization_bound,
                "discretization exceeds upper bound");
  disc.coeffs.push_back(tail);
  disc.max_value = partial + tail;
  disc.validate();
  return disc;
}

double QuboModel::default_tolerance() const {
  if (kind == FormulationKind::proxy) return 1e-9;
  return disc.min_coeff() * mu.minCoeff();
}

namespace {

void check_build_inputs(const AssetStats& stats, const Discretization& disc) {
  stats.validate();
  disc.validate();
  if (stats.size() == 0)
    throw Error(ErrorCode::invalid_argument, "no assets in stats");
  const double vars =
      double(stats.size()) * double(disc.coeffs.size());
  if (vars > double(std::uint32_t(-1)))
    throw Error(ErrorCode::problem_too_large, "variable count overflows");
}

}  // namespace

QuboModel build_proxy(const AssetStats& stats, const Discretization& disc,
                      double lambda0, double lambda1) {
  check_build_inputs(stats, disc);
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0))
    throw Error(ErrorCode::invalid_argument, "lambda weights must be positive");
  const auto N = std::uint32_t(stats.size());
  const auto K = std::uint32_t(disc.coeffs.size());
  const std::uint32_t n = N * K;
  for (Eigen::Index i = 0; i < Eigen::Index(N); ++i)
    if (!(stats.sigma(i) > 0.0))
      throw Error(ErrorCode::degenerate_asset,
                  "zero sigma for " + stats.assets[i]);

  const auto& d = disc.coeffs;
  Eigen::VectorXd a(N);
  for (Eigen::Index i = 0; i < Eigen::Index(N); ++i)
    a(i) = stats.mu(i) / stats.sigma(i);

  // One pass in sorted (v, u) order; every pair gets the H1 coupling
  // 2 d_k d_l, cross-asset pairs additionally the correlation term.
  std::vector<QuboTerm> terms;
  terms.reserve(std::size_t(n) * (n + 1) / 2);
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t vi = v / K, vk = v % K;
    const double dv = d[vk];
    terms.push_back({v, v, lambda0 * (-a(vi) * dv) + lambda1 * (dv * dv - 2.0 * dv)});
    for (std::uint32_t u = v + 1; u < n; ++u) {
      const std::uint32_t ui = u / K, uk = u % K;
      const double du = d[uk];
      double coeff = lambda1 * 2.0 * dv * du;
      if (ui != vi) coeff += lambda0 * stats.corr(vi, ui) * dv * du;
      if (coeff != 0.0) terms.push_back({v, u, coeff});
    }
  }

  QuboModel model;
  model.matrix = QuboMatrix::from_sorted_terms(n, std::move(terms), lambda1);
  model.kind = FormulationKind::proxy;
  model.disc = disc;
  model.lambda0 = lambda0;
  model.lambda1 = lambda1;
  model.assets = stats.assets;
  model.mu = stats.mu;
  model.cov = stats.cov;
  return model;
}

QuboModel build_proposed(const AssetStats& stats, const Discretization& disc,
                         double lambda0, double lambda1) {
  check_build_inputs(stats, disc);
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0))
    throw Error(ErrorCode::invalid_argument, "lambda weights must be positive");
  const auto N = std::uint32_t(stats.size());
  const auto H = std::uint32_t(disc.coeffs.size());
  const std::uint32_t n = N * H;
  for (Eigen::Index i = 0; i < Eigen::Index(N); ++i)
    if (!(stats.mu(i) > 0.0))
      throw Error(ErrorCode::assumption_violated,
                  "assumption violated: nonpositive expected return for " +
                      stats.assets[i]);

  const double mu_min = stats.mu.minCoeff();
  if (std::abs(disc.max_value * mu_min - 1.0) > 1e-9)
    throw Error(ErrorCode::invalid_argument,
                "discretization not built from the stats' minimum mu");

  const auto& c = disc.coeffs;
  std::vector<QuboTerm> terms;
  terms.reserve(std::size_t(n) * (n + 1) / 2);
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t vi = v / H, vk = v % H;
    const double cv = c[vk];
    const double qv = stats.mu(vi) * cv;  // constraint coefficient
    terms.push_back({v, v, lambda0 * stats.cov(vi, vi) * cv * cv +
                               lambda1 * (qv * qv - 2.0 * qv)});
    for (std::uint32_t u = v + 1; u < n; ++u) {
      const std::uint32_t ui = u / H, uk = u % H;
      const double cu = c[uk];
      const double coeff = lambda0 * 2.0 * stats.cov(vi, ui) * cv * cu +
                           lambda1 * 2.0 * qv * stats.mu(ui) * cu;
      if (coeff != 0.0) terms.push_back({v, u, coeff});
    }
  }

  QuboModel model;
  model.matrix = QuboMatrix::from_sorted_terms(n, std::move(terms), lambda1);
  model.kind = FormulationKind::proposed;
  model.disc = disc;
  model.lambda0 = lambda0;
  model.lambda1 = lambda1;
  model.assets = stats.assets;
  model.mu = stats.mu;
  model.cov = stats.cov;
  model.mu_min = mu_min;
  return model;
}

PortfolioSolution decode_proxy(const Bits& bits, const Discretization& disc,
                               std::size_t num_assets) {
  const std::size_t K = disc.coeffs.size();
  if (bits.size() != num_assets * K)
    throw Error(ErrorCode::invalid_argument, "bitstring length mismatch");
  PortfolioSolution sol;
  sol.bits = bits;
  sol.weights.resize(Eigen::Index(num_assets));
  for (std::size_t i = 0; i < num_assets; ++i) {
    double w = 0.0;
    for (std::size_t k = 0; k < K; ++k)
      if (bits[i * K + k]) w += disc.coeffs[k];
    sol.weights(Eigen::Index(i)) = w;
  }
  sol.residual = std::abs(sol.weights.sum() - 1.0);
  return sol;
}

PortfolioSolution decode_proposed(const Bits& bits, const Discretization& disc,
                                  const Eigen::VectorXd& mu) {
  const std::size_t H = disc.coeffs.size();
  const std::size_t num_assets = std::size_t(mu.size());
  if (bits.size() != num_assets * H)
    throw Error(ErrorCode::invalid_argument, "bitstring length mismatch");
  PortfolioSolution sol;
  sol.bits = bits;
  sol.y.resize(Eigen::Index(num_assets));
  for (std::size_t i = 0; i < num_assets; ++i) {
    double yi = 0.0;
    for (std::size_t k = 0; k < H; ++k)
      if (bits[i * H + k]) yi += disc.coeffs[k];
    sol.y(Eigen::Index(i)) = yi;
  }
  sol.k = sol.y.sum();
  sol.residual = std::abs(mu.dot(sol.y) - 1.0);
  if (sol.k > 0.0) {
    sol.weights = sol.y / sol.k;
  } else {
    sol.weights = Eigen::VectorXd::Zero(Eigen::Index(num_assets));
  }
  return sol;
}

bool feasibility(const PortfolioSolution& sol, FormulationKind kind,
                 double tolerance) {
  if (kind == FormulationKind::proposed && !(sol.k > 0.0)) return false;
  return sol.residual <= tolerance;
}

double sharpe_ratio(const Eigen::VectorXd& w, const Eigen::VectorXd& mu,
                    const Eigen::MatrixXd& cov) {
  if (w.size() != mu.size() || cov.rows() != w.size() || cov.cols() != w.size())
    throw Error(ErrorCode::invalid_argument, "dimension mismatch");
  const double variance = w.dot(cov * w);
  if (!(variance > 0.0))
    throw Error(ErrorCode::degenerate_asset, "zero-variance portfolio");
  return w.dot(mu) / std::sqrt(variance);
}

PortfolioSolution decode_solution(const QuboModel& model, const Bits& bits) {
  PortfolioSolution sol =
      model.kind == FormulationKind::proxy
          ? decode_proxy(bits, model.disc, model.num_assets())
          : decode_proposed(bits, model.disc, model.mu);
  sol.energy = model.matrix.evaluate(bits);
  sol.feasible = feasibility(sol, model.kind, model.default_tolerance());
  if (sol.weights.size() > 0 && sol.weights.maxCoeff() > 0.0) {
    const double variance = sol.weights.dot(model.cov * sol.weights);
    if (variance > 0.0)
      sol.sharpe = sol.weights.dot(model.mu) / std::sqrt(variance);
  }
  return sol;
}

int assets_selected(const PortfolioSolution& sol) {
  int count = 0;
  for (Eigen::Index i = 0; i < sol.weights.size(); ++i)
    if (sol.weights(i) > 0.0) ++count;
  return count;
}

}  // namespace msq
