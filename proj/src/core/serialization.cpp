#include "core/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace msq {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::parse, "invalid JSON");
  return j;
}

// Translates nlohmann shape/type errors into this library's error type.
template <typename Fn>
auto shaped(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, e.what());
  }
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse, "expected array");
  Eigen::VectorXd v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(Eigen::Index(i)) = j[i].get<double>();
  return v;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::parse, "expected non-empty matrix");
  const auto rows = Eigen::Index(j.size());
  const auto cols = Eigen::Index(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (Eigen::Index(j[std::size_t(r)].size()) != cols)
      throw Error(ErrorCode::parse, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = j[std::size_t(r)][std::size_t(c)].get<double>();
  }
  return m;
}

json optional_to_json(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

json qubo_to_json_value(const QuboMatrix& q) {
  json entries = json::array();
  for (const auto& t : q.terms())
    entries.push_back(json::array({t.i, t.j, t.value}));
  return json{{"n", q.size()}, {"offset", q.offset()}, {"entries", entries}};
}

QuboMatrix qubo_from_json_value(const json& j) {
  const auto n = j.at("n").get<std::uint32_t>();
  QuboBuilder builder(n);
  builder.add_offset(j.at("offset").get<double>());
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3)
      throw Error(ErrorCode::parse, "entry must be [i, j, value]");
    builder.add(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(),
                e[2].get<double>());
  }
  return builder.build();
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << content;
}

std::string bits_to_string(const Bits& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

Bits bits_from_string(const std::string& text) {
  Bits bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw Error(ErrorCode::parse, "bitstring must contain only 0/1");
    bits[i] = text[i] == '1';
  }
  return bits;
}

// ---------------------------------------------------------------- stats --

std::string stats_to_json(const AssetStats& stats) {
  json j{{"assets", stats.assets},
         {"mu", vector_to_json(stats.mu)},
         {"sigma", vector_to_json(stats.sigma)},
         {"cov", matrix_to_json(stats.cov)},
         {"corr", matrix_to_json(stats.corr)},
         {"frequency", stats.frequency}};
  return j.dump(2) + "\n";
}

AssetStats stats_from_json(const std::string& text) {
  const json j = parse(text);
  return shaped([&] {
  AssetStats stats;
  stats.assets = j.at("assets").get<std::vector<std::string>>();
  stats.mu = vector_from_json(j.at("mu"));
  stats.sigma = vector_from_json(j.at("sigma"));
  stats.cov = matrix_from_json(j.at("cov"));
  stats.corr = matrix_from_json(j.at("corr"));
  stats.frequency = j.at("frequency").get<int>();
  stats.validate();
  return stats;
  });
}

void save_stats(const AssetStats& stats, const std::string& path) {
  write_text_file(path, stats_to_json(stats));
}

AssetStats load_stats(const std::string& path) {
  return stats_from_json(read_text_file(path));
}

// ----------------------------------------------------------------- qubo --

std::string qubo_to_json(const QuboMatrix& q) {
  return qubo_to_json_value(q).dump(2) + "\n";
}

QuboMatrix qubo_from_json(const std::string& text) {
  return shaped([&] { return qubo_from_json_value(parse(text)); });
}

void write_qubo_text(const QuboMatrix& q, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", q.offset());
  out << "# offset " << buf << "\n";
  for (const auto& t : q.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.value);
    out << t.i << ' ' << t.j << ' ' << buf << "\n";
  }
}

QuboMatrix read_qubo_text(std::istream& in) {
  double offset = 0.0;
  std::uint32_t max_index = 0;
  std::vector<QuboTerm> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      if (ss >> key && key == "offset") ss >> offset;
      continue;
    }
    std::istringstream ss(line);
    QuboTerm t;
    if (!(ss >> t.i >> t.j >> t.value))
      throw Error(ErrorCode::parse, "bad triplet line: " + line);
    max_index = std::max({max_index, t.i, t.j});
    terms.push_back(t);
  }
  QuboBuilder builder(terms.empty() ? 0 : max_index + 1);
  builder.add_offset(offset);
  for (const auto& t : terms) builder.add(t.i, t.j, t.value);
  return builder.build();
}

void save_qubo_text(const QuboMatrix& q, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  write_qubo_text(q, out);
}

QuboMatrix load_qubo_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return read_qubo_text(in);
}

// ---------------------------------------------------------------- model --

std::string model_to_json(const QuboModel& model) {
  json disc{{"coeffs", model.disc.coeffs}, {"max_value", model.disc.max_value}};
  json meta{{"kind", to_string(model.kind)},
            {"lambda0", model.lambda0},
            {"lambda1", model.lambda1},
            {"assets", model.assets},
            {"mu", vector_to_json(model.mu)},
            {"cov", matrix_to_json(model.cov)},
            {"discretization", disc},
            {"mu_min", model.kind == FormulationKind::proposed
                           ? json(model.mu_min)
                           : json(nullptr)}};
  json j{{"qubo", qubo_to_json_value(model.matrix)}, {"metadata", meta}};
  return j.dump() + "\n";
}

QuboModel model_from_json(const std::string& text) {
  const json j = parse(text);
  return shaped([&] {
  QuboModel model;
  model.matrix = qubo_from_json_value(j.at("qubo"));
  const json& meta = j.at("metadata");
  model.kind = formulation_kind_from_string(meta.at("kind").get<std::string>());
  model.lambda0 = meta.at("lambda0").get<double>();
  model.lambda1 = meta.at("lambda1").get<double>();
  model.assets = meta.at("assets").get<std::vector<std::string>>();
  model.mu = vector_from_json(meta.at("mu"));
  model.cov = matrix_from_json(meta.at("cov"));
  model.disc.coeffs =
      meta.at("discretization").at("coeffs").get<std::vector<double>>();
  model.disc.max_value =
      meta.at("discretization").at("max_value").get<double>();
  model.disc.validate();
  if (meta.contains("mu_min") && !meta.at("mu_min").is_null())
    model.mu_min = meta.at("mu_min").get<double>();
  if (model.matrix.size() !=
      std::uint32_t(model.assets.size() * model.disc.coeffs.size()))
    throw Error(ErrorCode::parse, "model variable count inconsistent");
  return model;
  });
}

void save_model(const QuboModel& model, const std::string& path) {
  write_text_file(path, model_to_json(model));
}

QuboModel load_model(const std::string& path) {
  return model_from_json(read_text_file(path));
}

// ------------------------------------------------------------- solution --

std::string solution_to_json(const PortfolioSolution& sol,
                             FormulationKind kind,
                             const std::vector<std::string>& assets,
                             const std::string& solver_name, double wall_ms) {
  json j{{"bits", bits_to_string(sol.bits)},
         {"weights", vector_to_json(sol.weights)},
         {"y", kind == FormulationKind::proposed ? vector_to_json(sol.y)
                                                 : json(nullptr)},
         {"k", kind == FormulationKind::proposed ? json(sol.k) : json(nullptr)},
         {"sharpe", optional_to_json(sol.sharpe)},
         {"feasible", sol.feasible},
         {"residual", sol.residual},
         {"energy", sol.energy},
         {"kind", to_string(kind)},
         {"assets", assets},
         {"solver", solver_name},
         {"wall_ms", wall_ms}};
  return j.dump(2) + "\n";
}

LoadedSolution solution_from_json(const std::string& text) {
  const json j = parse(text);
  return shaped([&] {
  LoadedSolution loaded;
  loaded.kind = formulation_kind_from_string(j.at("kind").get<std::string>());
  loaded.assets = j.at("assets").get<std::vector<std::string>>();
  loaded.solver = j.value("solver", std::string());
  PortfolioSolution& sol = loaded.solution;
  sol.bits = bits_from_string(j.at("bits").get<std::string>());
  sol.weights = vector_from_json(j.at("weights"));
  if (j.contains("y") && !j.at("y").is_null()) sol.y = vector_from_json(j.at("y"));
  if (j.contains("k") && !j.at("k").is_null()) sol.k = j.at("k").get<double>();
  if (!j.at("sharpe").is_null()) sol.sharpe = j.at("sharpe").get<double>();
  sol.feasible = j.at("feasible").get<bool>();
  sol.residual = j.at("residual").get<double>();
  sol.energy = j.at("energy").get<double>();
  return loaded;
  });
}

LoadedSolution load_solution(const std::string& path) {
  return solution_from_json(read_text_file(path));
}

// --------------------------------------------------------- solver config --

SolverConfig solver_config_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw Error(ErrorCode::parse, "config must be an object");
  return shaped([&] {
  SolverConfig config;
  if (j.contains("solver"))
    config.solver = solver_kind_from_string(j.at("solver").get<std::string>());
  if (j.contains("sweeps")) config.sweeps = j.at("sweeps").get<int>();
  if (j.contains("beta_start") && !j.at("beta_start").is_null())
    config.beta_start = j.at("beta_start").get<double>();
  if (j.contains("beta_end") && !j.at("beta_end").is_null())
    config.beta_end = j.at("beta_end").get<double>();
  if (j.contains("restarts")) config.restarts = j.at("restarts").get<int>();
  if (j.contains("iterations"))
    config.iterations = j.at("iterations").get<int>();
  if (j.contains("tenure")) config.tenure = j.at("tenure").get<int>();
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  return config;
  });
}

std::string solver_config_to_json(const SolverConfig& config) {
  json j{{"solver", to_string(config.solver)},
         {"sweeps", config.sweeps},
         {"beta_start", config.beta_start ? json(*config.beta_start)
                                          : json(nullptr)},
         {"beta_end",
          config.beta_end ? json(*config.beta_end) : json(nullptr)},
         {"restarts", config.restarts},
         {"iterations", config.iterations},
         {"tenure", config.tenure},
         {"seed", config.seed}};
  return j.dump();
}

// ----------------------------------------------------------------- grid --

LambdaGrid grid_from_json(const std::string& text) {
  const json j = parse(text);
  return shaped([&] {
  LambdaGrid grid;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2)
      throw Error(ErrorCode::parse, "grid pair must be [lambda0, lambda1]");
    grid.pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  if (j.contains("runs_per_pair"))
    grid.runs_per_pair = j.at("runs_per_pair").get<int>();
  grid.validate();
  return grid;
  });
}

LambdaGrid load_grid(const std::string& path) {
  return grid_from_json(read_text_file(path));
}

// ------------------------------------------------------------ calibration --

std::string calibration_to_json(const CalibrationReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back(json{{"lambda0", r.lambda0},
                           {"lambda1", r.lambda1},
                           {"feasible_count", r.feasible_count},
                           {"total_runs", r.total_runs},
                           {"feasible_pct", r.feasible_pct},
                           {"best_sharpe", optional_to_json(r.best_sharpe)},
                           {"mean_sharpe_feasible",
                            optional_to_json(r.mean_sharpe_feasible)}});
  }
  json j{{"kind", to_string(report.kind)},
         {"runs_per_pair", report.runs_per_pair},
         {"records", records},
         {"chosen_index", report.chosen_index},
         {"chosen", report.chosen_index >= 0
                        ? json{{"lambda0", report.chosen().lambda0},
                               {"lambda1", report.chosen().lambda1}}
                        : json(nullptr)}};
  return j.dump(2) + "\n";
}

void save_calibration_json(const CalibrationReport& report,
                           const std::string& path) {
  write_text_file(path, calibration_to_json(report));
}

void write_calibration_csv(const CalibrationReport& report,
                           std::ostream& out) {
  out << "lambda0,lambda1,feasible_count,total_runs,feasible_pct,"
         "best_sharpe,mean_sharpe_feasible,chosen\n";
  char buf[64];
  auto cell = [&](std::optional<double> v) -> std::string {
    if (!v) return "";
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
  };
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    out << cell(r.lambda0) << ',' << cell(r.lambda1) << ',' << r.feasible_count
        << ',' << r.total_runs << ',' << cell(r.feasible_pct) << ','
        << cell(r.best_sharpe) << ',' << cell(r.mean_sharpe_feasible) << ','
        << (int(i) == report.chosen_index ? 1 : 0) << "\n";
  }
}

void save_calibration_csv(const CalibrationReport& report,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  write_calibration_csv(report, out);
}

// -------------------------------------------------------- run statistics --

std::string run_statistics_to_json(const RunStatistics& stats,
                                   FormulationKind kind,
                                   const std::vector<std::string>& assets) {
  json solutions = json::array();
  for (const auto& rec : stats.solutions) {
    solutions.push_back(
        json{{"attempt", rec.attempt},
             {"bits", bits_to_string(rec.solution.bits)},
             {"weights", vector_to_json(rec.solution.weights)},
             {"sharpe", optional_to_json(rec.solution.sharpe)},
             {"feasible", rec.solution.feasible},
             {"residual", rec.solution.residual},
             {"energy", rec.solution.energy},
             {"assets_selected", assets_selected(rec.solution)}});
  }
  json j{{"kind", to_string(kind)},
         {"assets", assets},
         {"requested", stats.requested},
         {"collected", int(stats.solutions.size())},
         {"attempts_used", stats.attempts_used},
         {"shortfall", stats.shortfall},
         {"sharpe", json{{"min", stats.sharpe_min},
                         {"max", stats.sharpe_max},
                         {"mean", stats.sharpe_mean},
                         {"median", stats.sharpe_median}}},
         {"asset_count", json{{"min", stats.assets_min},
                              {"max", stats.assets_max},
                              {"mean", stats.assets_mean}}},
         {"solutions", solutions}};
  return j.dump(2) + "\n";
}

void save_run_statistics_json(const RunStatistics& stats, FormulationKind kind,
                              const std::vector<std::string>& assets,
                              const std::string& path) {
  write_text_file(path, run_statistics_to_json(stats, kind, assets));
}

void write_run_statistics_csv(const RunStatistics& stats, std::ostream& out) {
  out << "attempt,feasible,sharpe,residual,energy,assets_selected\n";
  char buf[64];
  auto cell = [&](double v) -> std::string {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  for (const auto& rec : stats.solutions) {
    out << rec.attempt << ',' << (rec.solution.feasible ? 1 : 0) << ','
        << cell(rec.solution.sharpe.value_or(
               std::numeric_limits<double>::quiet_NaN()))
        << ',' << cell(rec.solution.residual) << ',' << cell(rec.solution.energy)
        << ',' << assets_selected(rec.solution) << "\n";
  }
}

void save_run_statistics_csv(const RunStatistics& stats,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  write_run_statistics_csv(stats, out);
}

// ------------------------------------------------------------- normality --

std::string normality_to_json(const std::vector<std::string>& assets,
                              const NormalityScore& simple,
                              const NormalityScore& log_score,
                              ReturnKind selected) {
  auto block = [](const NormalityScore& s) {
    return json{{"pooled", s.pooled}, {"per_asset", vector_to_json(s.per_asset)}};
  };
  json j{{"assets", assets},
         {"simple", block(simple)},
         {"log", block(log_score)},
         {"selected", to_string(selected)}};
  return j.dump(2) + "\n";
}

void write_qq_csv(const std::vector<QQPoint>& points, std::ostream& out) {
  out << "p,theoretical,empirical\n";
  char buf[64];
  auto cell = [&](double v) -> std::string {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  };
  for (const auto& p : points)
    out << cell(p.p) << ',' << cell(p.theoretical) << ',' << cell(p.empirical)
        << "\n";
}

void save_qq_csv(const std::vector<QQPoint>& points, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  write_qq_csv(points, out);
}

}  // namespace msq
