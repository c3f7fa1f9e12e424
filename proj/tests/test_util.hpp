#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "core/market_data.hpp"
#include "core/qubo.hpp"
#include "core/random.hpp"

namespace msq::test {

// Box-Muller on SplitMix64; platform-independent so frozen expected values
// stay valid.
inline double gaussian(SplitMix64& rng) {
  double u1 = rng.next_double();
  while (u1 <= 0.0) u1 = rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Bits random_bits(std::size_t n, SplitMix64& rng) {
  Bits x(n);
  for (auto& b : x) b = std::uint8_t(rng.next() & 1u);
  return x;
}

inline Bits bits_from_counter(std::uint64_t m, std::size_t n) {
  Bits x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (m >> i) & 1u;
  return x;
}

// Dense random QUBO with coefficients in [-1, 1).
inline QuboMatrix random_qubo(std::uint32_t n, std::uint64_t seed,
                              double density = 1.0) {
  SplitMix64 rng(seed);
  QuboBuilder builder(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) {
      if (rng.next_double() < density)
        builder.add(i, j, 2.0 * rng.next_double() - 1.0);
    }
  }
  builder.add_offset(2.0 * rng.next_double() - 1.0);
  return builder.build();
}

// Stats with a well-formed SPD covariance from a 3-factor correlation model.
inline AssetStats random_stats(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const Eigen::Index m = n;
  Eigen::MatrixXd factors(m, 3);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index f = 0; f < 3; ++f) factors(i, f) = gaussian(rng);
  Eigen::MatrixXd raw = factors * factors.transpose();
  for (Eigen::Index i = 0; i < m; ++i) raw(i, i) += 1.0 + rng.next_double();

  AssetStats stats;
  stats.mu.resize(m);
  stats.sigma.resize(m);
  stats.cov.resize(m, m);
  stats.corr.resize(m, m);
  Eigen::VectorXd vol(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    vol(i) = 0.1 + 0.35 * rng.next_double();
    stats.mu(i) = 0.03 + 0.27 * rng.next_double();
    char name[16];
    std::snprintf(name, sizeof name, "A%03d", int(i));
    stats.assets.push_back(name);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double rho = raw(i, j) / std::sqrt(raw(i, i) * raw(j, j));
      stats.corr(i, j) = i == j ? 1.0 : rho;
      stats.cov(i, j) = rho * vol(i) * vol(j);
    }
  }
  stats.sigma = vol;
  stats.frequency = 252;
  return stats;
}

// Stats whose unconstrained tangency portfolio is strictly positive:
// mu := cov * z for positive z, so cov^-1 mu = z > 0.
inline AssetStats interior_tangency_stats(int n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    AssetStats stats = random_stats(n, mix_seed(seed, attempt));
    SplitMix64 rng(mix_seed(seed, attempt, 17));
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z(i) = 0.5 + 1.5 * rng.next_double();
    Eigen::VectorXd mu = stats.cov * z;
    if (mu.minCoeff() > 1e-4) {
      stats.mu = mu;
      return stats;
    }
  }
}

}  // namespace msq::test
