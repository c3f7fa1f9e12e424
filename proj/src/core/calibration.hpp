#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/formulation.hpp"
#include "core/solver.hpp"

namespace msq {

struct LambdaGrid {
  std::vector<std::pair<double, double>> pairs;  // (lambda0, lambda1)
  int runs_per_pair = 20;

  void validate() const;
};

struct CalibrationRecord {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  int feasible_count = 0;
  int total_runs = 0;
  double feasible_pct = 0.0;
  std::optional<double> best_sharpe;
  std::optional<double> mean_sharpe_feasible;
};

struct CalibrationReport {
  FormulationKind kind = FormulationKind::proxy;
  int runs_per_pair = 0;
  std::vector<CalibrationRecord> records;
  int chosen_index = -1;

  const CalibrationRecord& chosen() const;
};

// Raised when every pair yields zero feasible runs; the full report is
// attached for inspection.
class NoFeasibleError : public Error {
 public:
  NoFeasibleError(const std::string& what, CalibrationReport report)
      : Error(ErrorCode::no_feasible, what), report_(std::move(report)) {}

  const CalibrationReport& report() const { return report_; }

 private:
  CalibrationReport report_;
};

struct BuildOptions {
  int bits_per_asset = 0;  // 0 = formulation default (9 proxy, 12 proposed)
  // Proposed-formulation discretization step; 0 auto-fits the step to the
  // data as (1/mu_min)/2^H, which keeps the geometric part at roughly half
  // the representable range for any mu_min.
  double step = 0.0;
};

QuboModel build_formulation(FormulationKind kind, const AssetStats& stats,
                            double lambda0, double lambda1,
                            const BuildOptions& options = {});

// For each pair: build the QUBO once, solve runs_per_pair times with seeds
// derived from (seed, lambda0, lambda1, run), decode and count feasibility.
// Chosen pair: highest feasible_pct, then higher best_sharpe, then lower
// lambda1, then lower lambda0.
CalibrationReport calibrate(FormulationKind kind, const AssetStats& stats,
                            const LambdaGrid& grid, const SolverConfig& solver,
                            std::uint64_t seed, int threads = 1,
                            const BuildOptions& options = {});

struct SolutionRecord {
  int attempt = 0;
  PortfolioSolution solution;
};

struct RunStatistics {
  int requested = 0;
  int attempts_used = 0;
  bool shortfall = false;
  std::vector<SolutionRecord> solutions;  // feasible only
  double sharpe_min = 0.0, sharpe_max = 0.0, sharpe_mean = 0.0,
         sharpe_median = 0.0;
  int assets_min = 0, assets_max = 0;
  double assets_mean = 0.0;
};

// Solves with fresh derived seeds, keeping feasible decoded solutions until
// n_feasible are collected or max_attempts are exhausted (shortfall flag).
RunStatistics collect_statistics(const QuboModel& model,
                                 const SolverConfig& solver, int n_feasible,
                                 int max_attempts, std::uint64_t seed,
                                 int threads = 1);

}  // namespace msq
