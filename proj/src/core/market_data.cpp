#include "core/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/dates.hpp"

namespace msq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

bool PricePanel::dense() const {
  return std::none_of(prices.begin(), prices.end(),
                      [](double v) { return std::isnan(v); });
}

void PricePanel::validate() const {
  if (prices.size() != rows() * cols())
    throw Error(ErrorCode::invalid_argument, "panel dimensions inconsistent");
  for (std::size_t r = 1; r < rows(); ++r) {
    if (!(dates[r - 1] < dates[r]))
      throw Error(ErrorCode::non_monotonic_dates, "non-monotonic dates");
  }
  for (std::size_t c = 0; c < cols(); ++c) {
    std::size_t observed = 0;
    for (std::size_t r = 0; r < rows(); ++r)
      if (!missing(r, c)) ++observed;
    if (observed < 2)
      throw Error(ErrorCode::insufficient_data,
                  "asset " + assets[c] + " has fewer than 2 observations");
  }
}

const char* to_string(ReturnKind kind) {
  return kind == ReturnKind::simple ? "simple" : "log";
}

ReturnKind return_kind_from_string(const std::string& name) {
  if (name == "simple") return ReturnKind::simple;
  if (name == "log") return ReturnKind::log;
  throw Error(ErrorCode::invalid_argument, "unknown return kind: " + name);
}

PricePanel parse_price_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::empty_input, "empty file");
  // Strip a UTF-8 BOM if present.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
    line.erase(0, 3);

  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "date")
    throw Error(ErrorCode::parse, "malformed header: first column must be 'date'");
  if (header.size() < 2)
    throw Error(ErrorCode::parse, "malformed header: no asset columns");

  PricePanel panel;
  panel.assets.assign(header.begin() + 1, header.end());
  for (std::size_t c = 0; c < panel.assets.size(); ++c) {
    if (panel.assets[c].empty())
      throw Error(ErrorCode::parse, "malformed header: empty ticker");
    for (std::size_t d = c + 1; d < panel.assets.size(); ++d)
      if (panel.assets[c] == panel.assets[d])
        throw Error(ErrorCode::parse,
                    "malformed header: duplicate ticker " + panel.assets[c]);
  }

  const std::size_t n_assets = panel.assets.size();
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() > n_assets + 1)
      throw Error(ErrorCode::parse,
                  "row has more cells than the header: " + line);
    const std::string date = cells.empty() ? "" : cells[0];
    if (!parse_iso_date(date))
      throw Error(ErrorCode::parse, "unparseable date: " + date);
    if (!panel.dates.empty() && !(panel.dates.back() < date))
      throw Error(ErrorCode::non_monotonic_dates, "non-monotonic dates");
    panel.dates.push_back(date);
    for (std::size_t c = 0; c < n_assets; ++c) {
      double value = kNaN;
      if (c + 1 < cells.size() && !cells[c + 1].empty()) {
        const std::string& cell = cells[c + 1];
        const char* first = cell.data();
        const char* last = first + cell.size();
        double parsed = 0;
        auto [ptr, ec] = std::from_chars(first, last, parsed);
        if (ec == std::errc() && ptr == last) value = parsed;
      }
      panel.prices.push_back(value);
    }
  }
  if (panel.dates.empty()) throw Error(ErrorCode::empty_input, "empty file");
  panel.validate();
  return panel;
}

PricePanel load_prices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return parse_price_csv(in);
}

void write_price_csv(const PricePanel& panel, std::ostream& out) {
  out << "date";
  for (const auto& a : panel.assets) out << ',' << a;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < panel.rows(); ++r) {
    out << panel.dates[r];
    for (std::size_t c = 0; c < panel.cols(); ++c) {
      out << ',';
      if (!panel.missing(r, c)) {
        std::snprintf(buf, sizeof buf, "%.17g", panel.at(r, c));
        out << buf;
      }
    }
    out << '\n';
  }
}

void save_price_csv(const PricePanel& panel, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  write_price_csv(panel, out);
}

PricePanel clean_panel(const PricePanel& panel, int max_consecutive_missing) {
  if (max_consecutive_missing < 1)
    throw Error(ErrorCode::invalid_argument,
                "max_consecutive_missing must be >= 1");
  const std::size_t rows = panel.rows();

  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < panel.cols(); ++c) {
    std::size_t run = 0, longest = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      run = panel.missing(r, c) ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    if (longest <= std::size_t(max_consecutive_missing)) kept.push_back(c);
  }
  if (kept.empty())
    throw Error(ErrorCode::empty_panel, "empty panel after cleaning");

  // Forward-fill surviving columns, then trim rows before the latest first
  // observation so every column is dense on the remaining range.
  std::size_t first_row = 0;
  std::vector<std::vector<double>> filled(kept.size(),
                                          std::vector<double>(rows, kNaN));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const std::size_t c = kept[k];
    std::size_t first = rows;
    double last_seen = kNaN;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!panel.missing(r, c)) {
        last_seen = panel.at(r, c);
        if (first == rows) first = r;
      }
      filled[k][r] = last_seen;
    }
    first_row = std::max(first_row, first);
  }

  if (rows - first_row < 2)
    throw Error(ErrorCode::empty_panel, "empty panel after cleaning");

  PricePanel out;
  out.dates.assign(panel.dates.begin() + first_row, panel.dates.end());
  for (std::size_t k : kept) out.assets.push_back(panel.assets[k]);
  out.prices.resize(out.rows() * out.cols());
  for (std::size_t r = first_row; r < rows; ++r)
    for (std::size_t k = 0; k < kept.size(); ++k)
      out.at(r - first_row, k) = filled[k][r];
  out.validate();
  return out;
}

namespace {

ReturnPanel make_return_panel(const PricePanel& panel, ReturnKind kind) {
  if (!panel.dense())
    throw Error(ErrorCode::invalid_argument,
                "panel has missing entries; clean it first");
  if (panel.rows() < 2)
    throw Error(ErrorCode::insufficient_data, "need at least 2 price rows");

  ReturnPanel out;
  out.kind = kind;
  out.assets = panel.assets;
  out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  out.returns.resize(panel.rows() - 1, panel.cols());
  for (std::size_t c = 0; c < panel.cols(); ++c) {
    for (std::size_t r = 1; r < panel.rows(); ++r) {
      const double prev = panel.at(r - 1, c);
      const double cur = panel.at(r, c);
      if (kind == ReturnKind::simple) {
        if (prev <= 0.0 || cur <= 0.0)
          throw Error(ErrorCode::invalid_price,
                      "invalid price for " + panel.assets[c]);
        out.returns(r - 1, c) = (cur - prev) / prev;
      } else {
        if (prev <= 0.0)
          throw Error(ErrorCode::invalid_price,
                      "invalid price for " + panel.assets[c]);
        const double ratio = cur / prev;  // = 1 + R_t
        if (ratio <= 0.0)
          throw Error(ErrorCode::log_return_undefined,
                      "log-return undefined for " + panel.assets[c]);
        out.returns(r - 1, c) = std::log(ratio);
      }
    }
  }
  return out;
}

}  // namespace

ReturnPanel simple_returns(const PricePanel& panel) {
  return make_return_panel(panel, ReturnKind::simple);
}

ReturnPanel log_returns(const PricePanel& panel) {
  return make_return_panel(panel, ReturnKind::log);
}

AssetStats annualized_stats(const ReturnPanel& returns, int frequency) {
  const auto n = returns.returns.rows();
  const auto m = returns.returns.cols();
  if (n < 2)
    throw Error(ErrorCode::insufficient_data, "need at least 2 return rows");
  if (frequency < 1)
    throw Error(ErrorCode::invalid_argument, "frequency must be >= 1");

  AssetStats stats;
  stats.assets = returns.assets;
  stats.frequency = frequency;

  Eigen::VectorXd mean = returns.returns.colwise().mean();
  Eigen::MatrixXd centered = returns.returns.rowwise() - mean.transpose();
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) * (double(frequency) / double(n - 1));
  cov = ((cov + cov.transpose()) / 2.0).eval();  // enforce exact symmetry

  // A constant column only centers to ~machine epsilon, so detect zero
  // variance relative to the column scale.
  for (Eigen::Index c = 0; c < m; ++c) {
    const double scale = returns.returns.col(c).cwiseAbs().maxCoeff();
    const double tiny = 1e-28 * std::max(scale * scale, 1e-300) * frequency;
    if (cov(c, c) <= tiny)
      throw Error(ErrorCode::degenerate_asset,
                  "degenerate asset " + returns.assets[c]);
  }

  stats.mu = mean * double(frequency);
  stats.cov = cov;
  stats.sigma = cov.diagonal().cwiseSqrt();
  stats.corr.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    stats.corr(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      double rho = cov(i, j) / (stats.sigma(i) * stats.sigma(j));
      rho = std::clamp(rho, -1.0, 1.0);
      stats.corr(i, j) = rho;
      stats.corr(j, i) = rho;
    }
  }
  return stats;
}

AssetStats filter_positive_mu(const AssetStats& stats) {
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < stats.mu.size(); ++i)
    if (stats.mu(i) > 0.0) kept.push_back(i);
  if (kept.empty())
    throw Error(ErrorCode::no_investable_assets, "no investable assets");
  if (kept.size() == std::size_t(stats.mu.size())) return stats;

  AssetStats out;
  out.frequency = stats.frequency;
  const auto m = Eigen::Index(kept.size());
  out.mu.resize(m);
  out.sigma.resize(m);
  out.cov.resize(m, m);
  out.corr.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.assets.push_back(stats.assets[kept[i]]);
    out.mu(i) = stats.mu(kept[i]);
    out.sigma(i) = stats.sigma(kept[i]);
    for (Eigen::Index j = 0; j < m; ++j) {
      out.cov(i, j) = stats.cov(kept[i], kept[j]);
      out.corr(i, j) = stats.corr(kept[i], kept[j]);
    }
  }
  return out;
}

void AssetStats::validate() const {
  const auto m = Eigen::Index(assets.size());
  if (mu.size() != m || sigma.size() != m || cov.rows() != m ||
      cov.cols() != m || corr.rows() != m || corr.cols() != m)
    throw Error(ErrorCode::invalid_argument, "stats dimensions inconsistent");
  if (frequency < 1)
    throw Error(ErrorCode::invalid_argument, "frequency must be >= 1");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(corr(i, i) - 1.0) > 1e-12)
      throw Error(ErrorCode::invalid_argument, "corr diagonal must be 1");
    for (Eigen::Index j = 0; j < m; ++j) {
      if (std::abs(cov(i, j) - cov(j, i)) > 1e-12)
        throw Error(ErrorCode::invalid_argument, "cov must be symmetric");
      if (corr(i, j) < -1.0 - 1e-12 || corr(i, j) > 1.0 + 1e-12)
        throw Error(ErrorCode::invalid_argument, "corr out of range");
    }
    if (std::abs(cov(i, i) - sigma(i) * sigma(i)) >
        1e-12 * std::max(1.0, cov(i, i)))
      throw Error(ErrorCode::invalid_argument, "cov diagonal != sigma^2");
  }
}

}  // namespace msq
