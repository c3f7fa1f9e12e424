#include "core/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "core/parallel.hpp"
#include "core/random.hpp"

namespace msq {

void LambdaGrid::validate() const {
  if (pairs.empty())
    throw Error(ErrorCode::invalid_argument, "lambda grid is empty");
  if (runs_per_pair < 1)
    throw Error(ErrorCode::invalid_argument, "runs_per_pair must be >= 1");
  for (const auto& [l0, l1] : pairs)
    if (!(l0 > 0.0) || !(l1 > 0.0))
      throw Error(ErrorCode::invalid_argument,
                  "lambda values must be positive");
}

const CalibrationRecord& CalibrationReport::chosen() const {
  if (chosen_index < 0 || std::size_t(chosen_index) >= records.size())
    throw Error(ErrorCode::no_feasible, "no feasible configuration");
  return records[std::size_t(chosen_index)];
}

QuboModel build_formulation(FormulationKind kind, const AssetStats& stats,
                            double lambda0, double lambda1,
                            const BuildOptions& options) {
  if (kind == FormulationKind::proxy) {
    const int K = options.bits_per_asset > 0 ? options.bits_per_asset : 9;
    return build_proxy(stats, proxy_discretization(K), lambda0, lambda1);
  }
  const int H = options.bits_per_asset > 0 ? options.bits_per_asset : 12;
  const double mu_min = stats.mu.minCoeff();
  const double step = options.step > 0.0
                          ? options.step
                          : 1.0 / (mu_min * std::ldexp(1.0, H));
  return build_proposed(stats, proposed_discretization(mu_min, step, H),
                        lambda0, lambda1);
}

namespace {

std::uint64_t run_seed(std::uint64_t seed, double lambda0, double lambda1,
                       std::uint64_t run) {
  // Keyed on the lambda values themselves so identical pairs produce
  // identical per-pair records.
  return mix_seed(mix_seed(seed, bits_of(lambda0), bits_of(lambda1)), run);
}

}  // namespace

CalibrationReport calibrate(FormulationKind kind, const AssetStats& stats,
                            const LambdaGrid& grid, const SolverConfig& solver,
                            std::uint64_t seed, int threads,
                            const BuildOptions& options) {
  grid.validate();
  CalibrationReport report;
  report.kind = kind;
  report.runs_per_pair = grid.runs_per_pair;

  for (const auto& [lambda0, lambda1] : grid.pairs) {
    const QuboModel model =
        build_formulation(kind, stats, lambda0, lambda1, options);
    const int runs = grid.runs_per_pair;

    std::vector<std::uint8_t> feasible(std::size_t(runs), 0);
    std::vector<double> sharpe(std::size_t(runs), 0.0);
    parallel_for(std::size_t(runs), threads, [&](std::size_t r) {
      const auto config =
          solver.with_seed(run_seed(seed, lambda0, lambda1, r));
      const SolveResult solved = run_solver(model.matrix, config, 1);
      const PortfolioSolution sol = decode_solution(model, solved.best_bits);
      if (sol.feasible && sol.sharpe) {
        feasible[r] = 1;
        sharpe[r] = *sol.sharpe;
      }
    });

    CalibrationRecord record;
    record.lambda0 = lambda0;
    record.lambda1 = lambda1;
    record.total_runs = runs;
    double sum = 0.0;
    for (int r = 0; r < runs; ++r) {
      if (!feasible[std::size_t(r)]) continue;
      ++record.feasible_count;
      sum += sharpe[std::size_t(r)];
      if (!record.best_sharpe || sharpe[std::size_t(r)] > *record.best_sharpe)
        record.best_sharpe = sharpe[std::size_t(r)];
    }
    record.feasible_pct = double(record.feasible_count) / double(runs);
    if (record.feasible_count > 0)
      record.mean_sharpe_feasible = sum / double(record.feasible_count);
    report.records.push_back(record);
  }

  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (report.records[i].feasible_count == 0) continue;
    if (report.chosen_index < 0) {
      report.chosen_index = int(i);
      continue;
    }
    const auto& best = report.records[std::size_t(report.chosen_index)];
    const auto& cand = report.records[i];
    const double best_sharpe = best.best_sharpe.value_or(-1e300);
    const double cand_sharpe = cand.best_sharpe.value_or(-1e300);
    const bool better =
        cand.feasible_pct > best.feasible_pct ||
        (cand.feasible_pct == best.feasible_pct &&
         (cand_sharpe > best_sharpe ||
          (cand_sharpe == best_sharpe &&
           (cand.lambda1 < best.lambda1 ||
            (cand.lambda1 == best.lambda1 && cand.lambda0 < best.lambda0)))));
    if (better) report.chosen_index = int(i);
  }

  if (report.chosen_index < 0)
    throw NoFeasibleError("no feasible configuration", report);
  return report;
}

RunStatistics collect_statistics(const QuboModel& model,
                                 const SolverConfig& solver, int n_feasible,
                                 int max_attempts, std::uint64_t seed,
                                 int threads) {
  if (n_feasible < 1)
    throw Error(ErrorCode::invalid_argument, "n_feasible must be >= 1");
  if (max_attempts < n_feasible)
    throw Error(ErrorCode::invalid_argument,
                "max_attempts must be >= n_feasible");

  RunStatistics stats;
  stats.requested = n_feasible;

  // Attempts are evaluated in chunks but consumed strictly in index order,
  // so the collected set does not depend on the thread count.
  const int chunk = std::max(2 * resolve_threads(threads), 4);
  std::vector<PortfolioSolution> solutions{std::size_t(chunk)};
  for (int base = 0; base < max_attempts; base += chunk) {
    const int count = std::min(chunk, max_attempts - base);
    parallel_for(std::size_t(count), threads, [&](std::size_t i) {
      const auto config = solver.with_seed(mix_seed(seed, base + i));
      const SolveResult solved = run_solver(model.matrix, config, 1);
      solutions[i] = decode_solution(model, solved.best_bits);
    });
    for (int i = 0; i < count; ++i) {
      stats.attempts_used = base + i + 1;
      if (solutions[std::size_t(i)].feasible) {
        stats.solutions.push_back(
            {base + i, std::move(solutions[std::size_t(i)])});
        if (int(stats.solutions.size()) == n_feasible) break;
      }
    }
    if (int(stats.solutions.size()) == n_feasible) break;
  }
  stats.shortfall = int(stats.solutions.size()) < n_feasible;

  if (!stats.solutions.empty()) {
    std::vector<double> sharpes;
    sharpes.reserve(stats.solutions.size());
    double sharpe_sum = 0.0, asset_sum = 0.0;
    stats.assets_min = assets_selected(stats.solutions[0].solution);
    stats.assets_max = stats.assets_min;
    for (const auto& rec : stats.solutions) {
      const double s = rec.solution.sharpe.value_or(0.0);
      sharpes.push_back(s);
      sharpe_sum += s;
      const int count = assets_selected(rec.solution);
      asset_sum += count;
      stats.assets_min = std::min(stats.assets_min, count);
      stats.assets_max = std::max(stats.assets_max, count);
    }
    std::sort(sharpes.begin(), sharpes.end());
    stats.sharpe_min = sharpes.front();
    stats.sharpe_max = sharpes.back();
    stats.sharpe_mean = sharpe_sum / double(sharpes.size());
    const std::size_t mid = sharpes.size() / 2;
    stats.sharpe_median = sharpes.size() % 2 == 1
                              ? sharpes[mid]
                              : (sharpes[mid - 1] + sharpes[mid]) / 2.0;
    stats.assets_mean = asset_sum / double(stats.solutions.size());
  }
  return stats;
}

}  // namespace msq
