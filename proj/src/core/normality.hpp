#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "core/market_data.hpp"

namespace msq {

// Jarque-Bera statistic: n/6 * (skew^2 + (kurtosis-3)^2 / 4). Lower means
// closer to Gaussian. Requires at least 8 samples.
double jarque_bera(std::span<const double> samples);

struct NormalityScore {
  Eigen::VectorXd per_asset;  // JB per column
  double pooled = 0.0;        // JB over all entries
};

// Per-asset and pooled normality statistics; used to choose between simple
// and log returns.
NormalityScore normality_score(const ReturnPanel& returns);

// Inverse standard normal CDF (Acklam's rational approximation, ~1e-9).
double inverse_normal_cdf(double p);

struct QQPoint {
  double p;            // quantile level
  double theoretical;  // standard normal quantile
  double empirical;    // standardized sample quantile
};

// Theoretical-vs-empirical quantile pairs of the pooled standardized
// returns, for externally rendered QQ plots.
std::vector<QQPoint> qq_points(const ReturnPanel& returns,
                               std::size_t max_points = 256);

}  // namespace msq
