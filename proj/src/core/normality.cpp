#include "core/normality.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace msq {

double jarque_bera(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 8)
    throw Error(ErrorCode::insufficient_data,
                "jarque_bera needs at least 8 samples");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= double(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= double(n);
  m3 /= double(n);
  m4 /= double(n);
  if (m2 <= 0.0)
    throw Error(ErrorCode::degenerate_asset,
                "jarque_bera undefined for a constant sample");
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  return double(n) / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
}

NormalityScore normality_score(const ReturnPanel& returns) {
  const auto n = returns.returns.rows();
  const auto m = returns.returns.cols();
  if (n < 8)
    throw Error(ErrorCode::insufficient_data,
                "normality_score needs at least 8 return rows");
  NormalityScore score;
  score.per_asset.resize(m);
  std::vector<double> column(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) column[std::size_t(r)] = returns.returns(r, c);
    score.per_asset(c) = jarque_bera(column);
  }
  std::vector<double> pooled;
  pooled.reserve(std::size_t(n) * std::size_t(m));
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index r = 0; r < n; ++r) pooled.push_back(returns.returns(r, c));
  score.pooled = jarque_bera(pooled);
  return score;
}

// Acklam's rational approximation to the probit function.
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::invalid_argument, "p must be in (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::vector<QQPoint> qq_points(const ReturnPanel& returns,
                               std::size_t max_points) {
  std::vector<double> pooled;
  pooled.reserve(std::size_t(returns.returns.size()));
  for (Eigen::Index c = 0; c < returns.returns.cols(); ++c)
    for (Eigen::Index r = 0; r < returns.returns.rows(); ++r)
      pooled.push_back(returns.returns(r, c));
  if (pooled.size() < 8)
    throw Error(ErrorCode::insufficient_data,
                "qq_points needs at least 8 returns");

  double mean = 0.0;
  for (double v : pooled) mean += v;
  mean /= double(pooled.size());
  double var = 0.0;
  for (double v : pooled) var += (v - mean) * (v - mean);
  var /= double(pooled.size() - 1);
  const double sd = std::sqrt(var);
  for (double& v : pooled) v = (v - mean) / sd;
  std::sort(pooled.begin(), pooled.end());

  const std::size_t n = pooled.size();
  const std::size_t points = std::min(max_points, n);
  std::vector<QQPoint> out;
  out.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    // Indices spread evenly over the order statistics.
    const std::size_t idx = (k * (n - 1)) / (points - 1 > 0 ? points - 1 : 1);
    const double p = (double(idx) + 0.5) / double(n);
    out.push_back({p, inverse_normal_cdf(p), pooled[idx]});
  }
  return out;
}

}  // namespace msq
