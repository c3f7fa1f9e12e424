#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "core/calibration.hpp"
#include "core/formulation.hpp"
#include "core/market_data.hpp"
#include "core/normality.hpp"
#include "core/qubo.hpp"
#include "core/solver.hpp"

namespace msq {

// -- asset stats: {assets, mu, sigma, cov, corr, frequency} ---------------
std::string stats_to_json(const AssetStats& stats);
AssetStats stats_from_json(const std::string& text);
void save_stats(const AssetStats& stats, const std::string& path);
AssetStats load_stats(const std::string& path);

// -- bare QUBO: {n, offset, entries: [[i, j, value], ...]} ----------------
std::string qubo_to_json(const QuboMatrix& q);
QuboMatrix qubo_from_json(const std::string& text);

// Plain-text triplets, one `i j value` per line with a `# offset <v>`
// header, for interop with generic QUBO tooling.
void write_qubo_text(const QuboMatrix& q, std::ostream& out);
QuboMatrix read_qubo_text(std::istream& in);
void save_qubo_text(const QuboMatrix& q, const std::string& path);
QuboMatrix load_qubo_text(const std::string& path);

// -- full model: {qubo: {...}, metadata: {...}} ---------------------------
std::string model_to_json(const QuboModel& model);
QuboModel model_from_json(const std::string& text);
void save_model(const QuboModel& model, const std::string& path);
QuboModel load_model(const std::string& path);

// -- solutions -------------------------------------------------------------
std::string solution_to_json(const PortfolioSolution& sol,
                             FormulationKind kind,
                             const std::vector<std::string>& assets,
                             const std::string& solver_name, double wall_ms);

struct LoadedSolution {
  PortfolioSolution solution;
  FormulationKind kind = FormulationKind::proxy;
  std::vector<std::string> assets;
  std::string solver;
};
LoadedSolution solution_from_json(const std::string& text);
LoadedSolution load_solution(const std::string& path);

// -- solver config block ----------------------------------------------------
SolverConfig solver_config_from_json(const std::string& text);
std::string solver_config_to_json(const SolverConfig& config);

// -- lambda grid: {pairs: [[l0, l1], ...], runs_per_pair} -------------------
LambdaGrid grid_from_json(const std::string& text);
LambdaGrid load_grid(const std::string& path);

// -- calibration report ------------------------------------------------------
std::string calibration_to_json(const CalibrationReport& report);
void save_calibration_json(const CalibrationReport& report,
                           const std::string& path);
void write_calibration_csv(const CalibrationReport& report, std::ostream& out);
void save_calibration_csv(const CalibrationReport& report,
                          const std::string& path);

// -- run statistics -----------------------------------------------------------
std::string run_statistics_to_json(const RunStatistics& stats,
                                   FormulationKind kind,
                                   const std::vector<std::string>& assets);
void save_run_statistics_json(const RunStatistics& stats, FormulationKind kind,
                              const std::vector<std::string>& assets,
                              const std::string& path);
void write_run_statistics_csv(const RunStatistics& stats, std::ostream& out);
void save_run_statistics_csv(const RunStatistics& stats,
                             const std::string& path);

// -- normality report ---------------------------------------------------------
std::string normality_to_json(const std::vector<std::string>& assets,
                              const NormalityScore& simple,
                              const NormalityScore& log_score,
                              ReturnKind selected);
void write_qq_csv(const std::vector<QQPoint>& points, std::ostream& out);
void save_qq_csv(const std::vector<QQPoint>& points, const std::string& path);

// -- helpers -------------------------------------------------------------------
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string bits_to_string(const Bits& bits);
Bits bits_from_string(const std::string& text);

}  // namespace msq
