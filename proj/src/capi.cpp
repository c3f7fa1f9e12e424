#include "maxsharpe/maxsharpe.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "core/calibration.hpp"
#include "core/classical.hpp"
#include "core/formulation.hpp"
#include "core/market_data.hpp"
#include "core/normality.hpp"
#include "core/serialization.hpp"
#include "core/solver.hpp"
#include "core/synthetic.hpp"

using namespace msq;

struct msq_panel {
  PricePanel panel;
};
struct msq_stats {
  AssetStats stats;
};
struct msq_model {
  QuboModel model;
};
struct msq_solution {
  PortfolioSolution solution;
  FormulationKind kind = FormulationKind::proxy;
  std::vector<std::string> assets;
  std::string solver;
  double wall_ms = 0.0;
};
struct msq_calibration {
  CalibrationReport report;
};
struct msq_statistics {
  RunStatistics stats;
  FormulationKind kind = FormulationKind::proxy;
  std::vector<std::string> assets;
};

namespace {

thread_local std::string g_last_error;

msq_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return MSQ_OK;
    case ErrorCode::io: return MSQ_ERR_IO;
    case ErrorCode::parse: return MSQ_ERR_PARSE;
    case ErrorCode::invalid_argument: return MSQ_ERR_INVALID_ARGUMENT;
    case ErrorCode::empty_input: return MSQ_ERR_EMPTY_INPUT;
    case ErrorCode::empty_panel: return MSQ_ERR_EMPTY_PANEL;
    case ErrorCode::non_monotonic_dates: return MSQ_ERR_NON_MONOTONIC_DATES;
    case ErrorCode::invalid_price: return MSQ_ERR_INVALID_PRICE;
    case ErrorCode::log_return_undefined: return MSQ_ERR_LOG_RETURN_UNDEFINED;
    case ErrorCode::degenerate_asset: return MSQ_ERR_DEGENERATE_ASSET;
    case ErrorCode::no_investable_assets: return MSQ_ERR_NO_INVESTABLE_ASSETS;
    case ErrorCode::insufficient_data: return MSQ_ERR_INSUFFICIENT_DATA;
    case ErrorCode::discretization_bound: return MSQ_ERR_DISCRETIZATION_BOUND;
    case ErrorCode::assumption_violated: return MSQ_ERR_ASSUMPTION_VIOLATED;
    case ErrorCode::problem_too_large: return MSQ_ERR_PROBLEM_TOO_LARGE;
    case ErrorCode::no_feasible: return MSQ_ERR_NO_FEASIBLE;
    case ErrorCode::not_converged: return MSQ_ERR_NOT_CONVERGED;
    case ErrorCode::internal: return MSQ_ERR_INTERNAL;
  }
  return MSQ_ERR_INTERNAL;
}

template <typename Fn>
msq_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MSQ_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MSQ_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MSQ_ERR_INTERNAL;
  }
}

SolverConfig parse_config(const char* config_json) {
  if (config_json == nullptr || config_json[0] == '\0') return {};
  return solver_config_from_json(config_json);
}

const char* require(const char* s, const char* what) {
  if (s == nullptr) throw Error(ErrorCode::invalid_argument,
                                std::string(what) + " must not be null");
  return s;
}

}  // namespace

extern "C" {

const char* msq_version(void) { return "0.1.0"; }

const char* msq_status_name(msq_status status) {
  switch (status) {
    case MSQ_OK: return "ok";
    case MSQ_ERR_IO: return "io error";
    case MSQ_ERR_PARSE: return "parse error";
    case MSQ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MSQ_ERR_EMPTY_INPUT: return "empty input";
    case MSQ_ERR_EMPTY_PANEL: return "empty panel";
    case MSQ_ERR_NON_MONOTONIC_DATES: return "non-monotonic dates";
    case MSQ_ERR_INVALID_PRICE: return "invalid price";
    case MSQ_ERR_LOG_RETURN_UNDEFINED: return "log-return undefined";
    case MSQ_ERR_DEGENERATE_ASSET: return "degenerate asset";
    case MSQ_ERR_NO_INVESTABLE_ASSETS: return "no investable assets";
    case MSQ_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case MSQ_ERR_DISCRETIZATION_BOUND: return "discretization bound exceeded";
    case MSQ_ERR_ASSUMPTION_VIOLATED: return "assumption violated";
    case MSQ_ERR_PROBLEM_TOO_LARGE: return "problem too large";
    case MSQ_ERR_NO_FEASIBLE: return "no feasible configuration";
    case MSQ_ERR_NOT_CONVERGED: return "not converged";
    case MSQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* msq_last_error(void) { return g_last_error.c_str(); }

/* ---- panels ----------------------------------------------------------- */

msq_status msq_panel_load_csv(const char* path, msq_panel** out) {
  return guarded([&] {
    *out = new msq_panel{load_prices(require(path, "path"))};
  });
}

msq_status msq_panel_synth(const msq_synth_params* params, msq_panel** out) {
  return guarded([&] {
    if (params == nullptr)
      throw Error(ErrorCode::invalid_argument, "params must not be null");
    SynthParams sp;
    sp.assets = params->assets;
    sp.days = params->days;
    sp.seed = params->seed;
    if (params->start_date != nullptr) sp.start_date = params->start_date;
    sp.missing_rate = params->missing_rate;
    *out = new msq_panel{synth_prices(sp)};
  });
}

msq_status msq_panel_save_csv(const msq_panel* panel, const char* path) {
  return guarded([&] { save_price_csv(panel->panel, require(path, "path")); });
}

msq_status msq_panel_clean(const msq_panel* panel, int max_consecutive_missing,
                           msq_panel** out) {
  return guarded([&] {
    *out = new msq_panel{clean_panel(panel->panel, max_consecutive_missing)};
  });
}

int msq_panel_num_dates(const msq_panel* panel) {
  return int(panel->panel.rows());
}

int msq_panel_num_assets(const msq_panel* panel) {
  return int(panel->panel.cols());
}

void msq_panel_free(msq_panel* panel) { delete panel; }

/* ---- stats -------------------------------------------------------------- */

namespace {

ReturnPanel panel_returns(const PricePanel& panel, const char* kind) {
  const ReturnKind k = return_kind_from_string(require(kind, "return_kind"));
  return k == ReturnKind::simple ? simple_returns(panel) : log_returns(panel);
}

}  // namespace

msq_status msq_stats_compute(const msq_panel* clean_panel,
                             const char* return_kind, int frequency,
                             int filter_nonpositive, msq_stats** out) {
  return guarded([&] {
    AssetStats stats =
        annualized_stats(panel_returns(clean_panel->panel, return_kind),
                         frequency);
    if (filter_nonpositive) stats = filter_positive_mu(stats);
    *out = new msq_stats{std::move(stats)};
  });
}

msq_status msq_stats_load_json(const char* path, msq_stats** out) {
  return guarded([&] {
    *out = new msq_stats{load_stats(require(path, "path"))};
  });
}

msq_status msq_stats_save_json(const msq_stats* stats, const char* path) {
  return guarded([&] { save_stats(stats->stats, require(path, "path")); });
}

int msq_stats_num_assets(const msq_stats* stats) {
  return int(stats->stats.size());
}

const char* msq_stats_asset(const msq_stats* stats, int i) {
  return stats->stats.assets[std::size_t(i)].c_str();
}

double msq_stats_mu(const msq_stats* stats, int i) {
  return stats->stats.mu(i);
}

double msq_stats_sigma(const msq_stats* stats, int i) {
  return stats->stats.sigma(i);
}

double msq_stats_cov(const msq_stats* stats, int i, int j) {
  return stats->stats.cov(i, j);
}

int msq_stats_frequency(const msq_stats* stats) {
  return stats->stats.frequency;
}

void msq_stats_free(msq_stats* stats) { delete stats; }

/* ---- normality ------------------------------------------------------------ */

msq_status msq_normality_pooled(const msq_panel* clean_panel,
                                const char* return_kind, double* out) {
  return guarded([&] {
    *out = normality_score(panel_returns(clean_panel->panel, return_kind))
               .pooled;
  });
}

msq_status msq_write_normality_report(const msq_panel* clean_panel,
                                      const char* selected_kind,
                                      const char* path) {
  return guarded([&] {
    const ReturnPanel simple = simple_returns(clean_panel->panel);
    const ReturnPanel logr = log_returns(clean_panel->panel);
    const ReturnKind selected =
        return_kind_from_string(require(selected_kind, "selected_kind"));
    write_text_file(require(path, "path"),
                    normality_to_json(clean_panel->panel.assets,
                                      normality_score(simple),
                                      normality_score(logr), selected));
  });
}

msq_status msq_write_qq_csv(const msq_panel* clean_panel,
                            const char* return_kind, int max_points,
                            const char* path) {
  return guarded([&] {
    const auto points =
        qq_points(panel_returns(clean_panel->panel, return_kind),
                  max_points > 0 ? std::size_t(max_points) : 256);
    save_qq_csv(points, require(path, "path"));
  });
}

/* ---- models ------------------------------------------------------------- */

msq_status msq_model_build(const msq_stats* stats, const char* kind,
                           int bits_per_asset, double step, double lambda0,
                           double lambda1, msq_model** out) {
  return guarded([&] {
    BuildOptions options;
    options.bits_per_asset = bits_per_asset;
    options.step = step;
    const FormulationKind fk =
        formulation_kind_from_string(require(kind, "kind"));
    *out = new msq_model{
        build_formulation(fk, stats->stats, lambda0, lambda1, options)};
  });
}

msq_status msq_model_load_json(const char* path, msq_model** out) {
  return guarded([&] {
    *out = new msq_model{load_model(require(path, "path"))};
  });
}

msq_status msq_model_save_json(const msq_model* model, const char* path) {
  return guarded([&] { save_model(model->model, require(path, "path")); });
}

msq_status msq_model_save_qubo_text(const msq_model* model, const char* path) {
  return guarded(
      [&] { save_qubo_text(model->model.matrix, require(path, "path")); });
}

int msq_model_num_variables(const msq_model* model) {
  return int(model->model.num_variables());
}

int64_t msq_model_num_terms(const msq_model* model) {
  return int64_t(model->model.matrix.terms().size());
}

const char* msq_model_kind(const msq_model* model) {
  return to_string(model->model.kind);
}

int msq_model_num_assets(const msq_model* model) {
  return int(model->model.num_assets());
}

int msq_model_bits_per_asset(const msq_model* model) {
  return model->model.disc.bits_per_asset();
}

double msq_model_lambda0(const msq_model* model) {
  return model->model.lambda0;
}

double msq_model_lambda1(const msq_model* model) {
  return model->model.lambda1;
}

double msq_model_mu_min(const msq_model* model) { return model->model.mu_min; }

double msq_model_default_tolerance(const msq_model* model) {
  return model->model.default_tolerance();
}

void msq_model_free(msq_model* model) { delete model; }

/* ---- solving ---------------------------------------------------------------- */

msq_status msq_solve(const msq_model* model, const char* config_json,
                     int threads, msq_solution** out) {
  return guarded([&] {
    const SolverConfig config = parse_config(config_json);
    const SolveResult result = run_solver(model->model.matrix, config, threads);
    auto* sol = new msq_solution;
    sol->solution = decode_solution(model->model, result.best_bits);
    sol->kind = model->model.kind;
    sol->assets = model->model.assets;
    sol->solver = to_string(config.solver);
    sol->wall_ms = result.wall_seconds * 1000.0;
    *out = sol;
  });
}

msq_status msq_solution_save_json(const msq_solution* sol, const char* path) {
  return guarded([&] {
    write_text_file(require(path, "path"),
                    solution_to_json(sol->solution, sol->kind, sol->assets,
                                     sol->solver, sol->wall_ms));
  });
}

msq_status msq_solution_load_json(const char* path, msq_solution** out) {
  return guarded([&] {
    LoadedSolution loaded = load_solution(require(path, "path"));
    auto* sol = new msq_solution;
    sol->solution = std::move(loaded.solution);
    sol->kind = loaded.kind;
    sol->assets = std::move(loaded.assets);
    sol->solver = std::move(loaded.solver);
    *out = sol;
  });
}

int msq_solution_num_assets(const msq_solution* sol) {
  return int(sol->assets.size());
}

const char* msq_solution_asset(const msq_solution* sol, int i) {
  return sol->assets[std::size_t(i)].c_str();
}

const char* msq_solution_kind(const msq_solution* sol) {
  return to_string(sol->kind);
}

double msq_solution_weight(const msq_solution* sol, int i) {
  return sol->solution.weights(i);
}

double msq_solution_sharpe(const msq_solution* sol) {
  return sol->solution.sharpe.value_or(
      std::numeric_limits<double>::quiet_NaN());
}

int msq_solution_feasible(const msq_solution* sol) {
  return sol->solution.feasible ? 1 : 0;
}

double msq_solution_residual(const msq_solution* sol) {
  return sol->solution.residual;
}

double msq_solution_energy(const msq_solution* sol) {
  return sol->solution.energy;
}

int msq_solution_assets_selected(const msq_solution* sol) {
  return assets_selected(sol->solution);
}

double msq_solution_wall_ms(const msq_solution* sol) { return sol->wall_ms; }

void msq_solution_free(msq_solution* sol) { delete sol; }

/* ---- classical baseline ------------------------------------------------------ */

msq_status msq_classical_max_sharpe(const msq_stats* stats, int max_iters,
                                    double tol, double* weights_out,
                                    double* sharpe_out) {
  return guarded([&] {
    const Eigen::VectorXd w = classical_max_sharpe(
        stats->stats, max_iters > 0 ? max_iters : 100000,
        tol > 0.0 ? tol : 1e-10);
    if (weights_out != nullptr)
      for (Eigen::Index i = 0; i < w.size(); ++i) weights_out[i] = w(i);
    if (sharpe_out != nullptr)
      *sharpe_out = sharpe_ratio(w, stats->stats.mu, stats->stats.cov);
  });
}

/* ---- calibration -------------------------------------------------------------- */

msq_status msq_calibrate(const msq_stats* stats, const char* kind,
                         const char* grid_json, const char* config_json,
                         int bits_per_asset, double step, uint64_t seed,
                         int threads, msq_calibration** out) {
  return guarded([&] {
    const FormulationKind fk =
        formulation_kind_from_string(require(kind, "kind"));
    const LambdaGrid grid = grid_from_json(require(grid_json, "grid_json"));
    const SolverConfig config = parse_config(config_json);
    BuildOptions options;
    options.bits_per_asset = bits_per_asset;
    options.step = step;
    try {
      *out = new msq_calibration{
          calibrate(fk, stats->stats, grid, config, seed, threads, options)};
    } catch (const NoFeasibleError& e) {
      *out = new msq_calibration{e.report()};
      throw;
    }
  });
}

msq_status msq_calibration_save_json(const msq_calibration* cal,
                                     const char* path) {
  return guarded(
      [&] { save_calibration_json(cal->report, require(path, "path")); });
}

msq_status msq_calibration_save_csv(const msq_calibration* cal,
                                    const char* path) {
  return guarded(
      [&] { save_calibration_csv(cal->report, require(path, "path")); });
}

int msq_calibration_num_pairs(const msq_calibration* cal) {
  return int(cal->report.records.size());
}

int msq_calibration_chosen_index(const msq_calibration* cal) {
  return cal->report.chosen_index;
}

double msq_calibration_lambda0(const msq_calibration* cal, int i) {
  return cal->report.records[std::size_t(i)].lambda0;
}

double msq_calibration_lambda1(const msq_calibration* cal, int i) {
  return cal->report.records[std::size_t(i)].lambda1;
}

int msq_calibration_feasible_count(const msq_calibration* cal, int i) {
  return cal->report.records[std::size_t(i)].feasible_count;
}

int msq_calibration_total_runs(const msq_calibration* cal, int i) {
  return cal->report.records[std::size_t(i)].total_runs;
}

double msq_calibration_feasible_pct(const msq_calibration* cal, int i) {
  return cal->report.records[std::size_t(i)].feasible_pct;
}

double msq_calibration_best_sharpe(const msq_calibration* cal, int i) {
  return cal->report.records[std::size_t(i)].best_sharpe.value_or(
      std::numeric_limits<double>::quiet_NaN());
}

void msq_calibration_free(msq_calibration* cal) { delete cal; }

/* ---- statistics ------------------------------------------------------------------ */

msq_status msq_collect_statistics(const msq_model* model,
                                  const char* config_json, int n_feasible,
                                  int max_attempts, uint64_t seed, int threads,
                                  msq_statistics** out) {
  return guarded([&] {
    const SolverConfig config = parse_config(config_json);
    auto* handle = new msq_statistics;
    handle->kind = model->model.kind;
    handle->assets = model->model.assets;
    handle->stats = collect_statistics(model->model, config, n_feasible,
                                       max_attempts, seed, threads);
    *out = handle;
  });
}

msq_status msq_statistics_save_json(const msq_statistics* stats,
                                    const char* path) {
  return guarded([&] {
    save_run_statistics_json(stats->stats, stats->kind, stats->assets,
                             require(path, "path"));
  });
}

msq_status msq_statistics_save_csv(const msq_statistics* stats,
                                   const char* path) {
  return guarded(
      [&] { save_run_statistics_csv(stats->stats, require(path, "path")); });
}

int msq_statistics_collected(const msq_statistics* stats) {
  return int(stats->stats.solutions.size());
}

int msq_statistics_attempts_used(const msq_statistics* stats) {
  return stats->stats.attempts_used;
}

int msq_statistics_shortfall(const msq_statistics* stats) {
  return stats->stats.shortfall ? 1 : 0;
}

double msq_statistics_sharpe_mean(const msq_statistics* stats) {
  return stats->stats.sharpe_mean;
}

double msq_statistics_sharpe_min(const msq_statistics* stats) {
  return stats->stats.sharpe_min;
}

double msq_statistics_sharpe_max(const msq_statistics* stats) {
  return stats->stats.sharpe_max;
}

double msq_statistics_sharpe_median(const msq_statistics* stats) {
  return stats->stats.sharpe_median;
}

int msq_statistics_assets_min(const msq_statistics* stats) {
  return stats->stats.assets_min;
}

int msq_statistics_assets_max(const msq_statistics* stats) {
  return stats->stats.assets_max;
}

double msq_statistics_assets_mean(const msq_statistics* stats) {
  return stats->stats.assets_mean;
}

msq_status msq_statistics_solution(const msq_statistics* stats, int i,
                                   msq_solution** out) {
  return guarded([&] {
    if (i < 0 || std::size_t(i) >= stats->stats.solutions.size())
      throw Error(ErrorCode::invalid_argument, "solution index out of range");
    auto* sol = new msq_solution;
    sol->solution = stats->stats.solutions[std::size_t(i)].solution;
    sol->kind = stats->kind;
    sol->assets = stats->assets;
    *out = sol;
  });
}

void msq_statistics_free(msq_statistics* stats) { delete stats; }

} /* extern "C" */
