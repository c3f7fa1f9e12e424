#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace msq {

// Dated matrix of adjusted close prices, one column per asset.
// Missing entries are stored as NaN.
struct PricePanel {
  std::vector<std::string> dates;   // ISO-8601, strictly increasing
  std::vector<std::string> assets;  // ticker identifiers, column order
  std::vector<double> prices;       // row-major dates x assets

  std::size_t rows() const { return dates.size(); }
  std::size_t cols() const { return assets.size(); }

  double at(std::size_t r, std::size_t c) const {
    return prices[r * assets.size() + c];
  }
  double& at(std::size_t r, std::size_t c) {
    return prices[r * assets.size() + c];
  }
  bool missing(std::size_t r, std::size_t c) const {
    return std::isnan(at(r, c));
  }
  bool dense() const;

  // Enforces the type invariants: dimensions consistent, dates strictly
  // increasing, every column with at least two observations.
  void validate() const;
};

enum class ReturnKind { simple, log };

const char* to_string(ReturnKind kind);
ReturnKind return_kind_from_string(const std::string& name);

// Per-period returns; dense by construction.
struct ReturnPanel {
  std::vector<std::string> dates;  // length = price dates - 1
  std::vector<std::string> assets;
  Eigen::MatrixXd returns;  // rows x assets
  ReturnKind kind = ReturnKind::simple;
};

// Annualized sample statistics consumed by both QUBO formulations.
struct AssetStats {
  std::vector<std::string> assets;
  Eigen::VectorXd mu;     // expected returns, per year
  Eigen::VectorXd sigma;  // volatilities, per sqrt(year)
  Eigen::MatrixXd cov;    // covariance, per year
  Eigen::MatrixXd corr;
  int frequency = 252;  // periods per year

  std::size_t size() const { return assets.size(); }
  void validate() const;
};

// Price CSV schema: header `date,TICK1,...`; cells are decimal prices or
// empty; unparseable price cells become missing entries.
PricePanel parse_price_csv(std::istream& in);
PricePanel load_prices(const std::string& path);
void write_price_csv(const PricePanel& panel, std::ostream& out);
void save_price_csv(const PricePanel& panel, const std::string& path);

// Drops assets with a run of more than max_consecutive_missing missing
// entries, forward-fills the remaining gaps and trims leading rows so the
// result is dense.
PricePanel clean_panel(const PricePanel& panel, int max_consecutive_missing);

// R_t = (P_t - P_{t-1}) / P_{t-1}, columnwise. Panel must be dense with
// positive prices.
ReturnPanel simple_returns(const PricePanel& panel);

// log(1 + R_t), columnwise.
ReturnPanel log_returns(const PricePanel& panel);

// mu = sample mean * frequency, cov = sample covariance (n-1) * frequency,
// sigma = sqrt(diag cov), corr_ij = cov_ij / (sigma_i sigma_j).
AssetStats annualized_stats(const ReturnPanel& returns, int frequency = 252);

// Removes assets with mu <= 0, re-slicing all statistics consistently.
AssetStats filter_positive_mu(const AssetStats& stats);

}  // namespace msq
