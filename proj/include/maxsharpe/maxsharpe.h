/* maxsharpe: QUBO formulations of Max-Sharpe portfolio optimization.
 *
 * C interface to the shared library. All heap objects are opaque handles
 * created through msq_*_new/load functions and released with the matching
 * msq_*_free. Functions returning msq_status set a thread-local error
 * message retrievable with msq_last_error(). Getters assume a valid handle.
 */
#ifndef MAXSHARPE_H
#define MAXSHARPE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msq_status {
  MSQ_OK = 0,
  MSQ_ERR_IO = 1,
  MSQ_ERR_PARSE = 2,
  MSQ_ERR_INVALID_ARGUMENT = 3,
  MSQ_ERR_EMPTY_INPUT = 4,
  MSQ_ERR_EMPTY_PANEL = 5,
  MSQ_ERR_NON_MONOTONIC_DATES = 6,
  MSQ_ERR_INVALID_PRICE = 7,
  MSQ_ERR_LOG_RETURN_UNDEFINED = 8,
  MSQ_ERR_DEGENERATE_ASSET = 9,
  MSQ_ERR_NO_INVESTABLE_ASSETS = 10,
  MSQ_ERR_INSUFFICIENT_DATA = 11,
  MSQ_ERR_DISCRETIZATION_BOUND = 12,
  MSQ_ERR_ASSUMPTION_VIOLATED = 13,
  MSQ_ERR_PROBLEM_TOO_LARGE = 14,
  MSQ_ERR_NO_FEASIBLE = 15,
  MSQ_ERR_NOT_CONVERGED = 16,
  MSQ_ERR_INTERNAL = 17
} msq_status;

typedef struct msq_panel msq_panel;
typedef struct msq_stats msq_stats;
typedef struct msq_model msq_model;
typedef struct msq_solution msq_solution;
typedef struct msq_calibration msq_calibration;
typedef struct msq_statistics msq_statistics;

const char* msq_version(void);
const char* msq_status_name(msq_status status);
/* Message for the most recent failing call on this thread. */
const char* msq_last_error(void);

/* ---- price panels ---------------------------------------------------- */

typedef struct msq_synth_params {
  int assets;
  int days;
  uint64_t seed;
  const char* start_date; /* ISO-8601, NULL = 2018-01-02 */
  double missing_rate;    /* fraction of cells dropped, 0 for dense */
} msq_synth_params;

msq_status msq_panel_load_csv(const char* path, msq_panel** out);
msq_status msq_panel_synth(const msq_synth_params* params, msq_panel** out);
msq_status msq_panel_save_csv(const msq_panel* panel, const char* path);
msq_status msq_panel_clean(const msq_panel* panel, int max_consecutive_missing,
                           msq_panel** out);
int msq_panel_num_dates(const msq_panel* panel);
int msq_panel_num_assets(const msq_panel* panel);
void msq_panel_free(msq_panel* panel);

/* ---- annualized statistics ------------------------------------------- */

/* return_kind: "simple" | "log". Runs returns -> annualize -> (optionally)
 * positive-mu filter on an already clean panel. */
msq_status msq_stats_compute(const msq_panel* clean_panel,
                             const char* return_kind, int frequency,
                             int filter_nonpositive, msq_stats** out);
msq_status msq_stats_load_json(const char* path, msq_stats** out);
msq_status msq_stats_save_json(const msq_stats* stats, const char* path);
int msq_stats_num_assets(const msq_stats* stats);
const char* msq_stats_asset(const msq_stats* stats, int i);
double msq_stats_mu(const msq_stats* stats, int i);
double msq_stats_sigma(const msq_stats* stats, int i);
double msq_stats_cov(const msq_stats* stats, int i, int j);
int msq_stats_frequency(const msq_stats* stats);
void msq_stats_free(msq_stats* stats);

/* Pooled Jarque-Bera statistic of the panel's returns of the given kind;
 * lower means closer to Gaussian. */
msq_status msq_normality_pooled(const msq_panel* clean_panel,
                                const char* return_kind, double* out);
/* JSON report covering both return kinds plus the selected one. */
msq_status msq_write_normality_report(const msq_panel* clean_panel,
                                      const char* selected_kind,
                                      const char* path);
/* Theoretical-vs-empirical quantile pairs as CSV (p,theoretical,empirical). */
msq_status msq_write_qq_csv(const msq_panel* clean_panel,
                            const char* return_kind, int max_points,
                            const char* path);

/* ---- QUBO models ------------------------------------------------------ */

/* kind: "proxy" | "proposed". bits_per_asset 0 = default (9 proxy,
 * 12 proposed); step applies to proposed only, 0 = auto-fit to the data. */
msq_status msq_model_build(const msq_stats* stats, const char* kind,
                           int bits_per_asset, double step, double lambda0,
                           double lambda1, msq_model** out);
msq_status msq_model_load_json(const char* path, msq_model** out);
msq_status msq_model_save_json(const msq_model* model, const char* path);
/* Plain-text `i j value` triplets with a `# offset <v>` header. */
msq_status msq_model_save_qubo_text(const msq_model* model, const char* path);
int msq_model_num_variables(const msq_model* model);
int64_t msq_model_num_terms(const msq_model* model);
const char* msq_model_kind(const msq_model* model);
int msq_model_num_assets(const msq_model* model);
int msq_model_bits_per_asset(const msq_model* model);
double msq_model_lambda0(const msq_model* model);
double msq_model_lambda1(const msq_model* model);
double msq_model_mu_min(const msq_model* model);
double msq_model_default_tolerance(const msq_model* model);
void msq_model_free(msq_model* model);

/* ---- solving ----------------------------------------------------------- */

/* config_json: {"solver":"sa"|"tabu"|"exhaustive","sweeps":...,
 * "beta_start":...,"beta_end":...,"restarts":...,"iterations":...,
 * "tenure":...,"seed":...}; NULL or "{}" for defaults. */
msq_status msq_solve(const msq_model* model, const char* config_json,
                     int threads, msq_solution** out);
msq_status msq_solution_save_json(const msq_solution* sol, const char* path);
msq_status msq_solution_load_json(const char* path, msq_solution** out);
int msq_solution_num_assets(const msq_solution* sol);
const char* msq_solution_asset(const msq_solution* sol, int i);
const char* msq_solution_kind(const msq_solution* sol);
double msq_solution_weight(const msq_solution* sol, int i);
/* NaN when the portfolio is empty. */
double msq_solution_sharpe(const msq_solution* sol);
int msq_solution_feasible(const msq_solution* sol);
double msq_solution_residual(const msq_solution* sol);
double msq_solution_energy(const msq_solution* sol);
int msq_solution_assets_selected(const msq_solution* sol);
double msq_solution_wall_ms(const msq_solution* sol);
void msq_solution_free(msq_solution* sol);

/* ---- classical baseline ------------------------------------------------ */

/* weights_out must hold msq_stats_num_assets(stats) doubles. */
msq_status msq_classical_max_sharpe(const msq_stats* stats, int max_iters,
                                    double tol, double* weights_out,
                                    double* sharpe_out);

/* ---- calibration -------------------------------------------------------- */

/* grid_json: {"pairs":[[lambda0,lambda1],...],"runs_per_pair":20}. When
 * every pair yields zero feasible runs the call returns
 * MSQ_ERR_NO_FEASIBLE and *out still carries the full report. */
msq_status msq_calibrate(const msq_stats* stats, const char* kind,
                         const char* grid_json, const char* config_json,
                         int bits_per_asset, double step, uint64_t seed,
                         int threads, msq_calibration** out);
msq_status msq_calibration_save_json(const msq_calibration* cal,
                                     const char* path);
msq_status msq_calibration_save_csv(const msq_calibration* cal,
                                    const char* path);
int msq_calibration_num_pairs(const msq_calibration* cal);
int msq_calibration_chosen_index(const msq_calibration* cal); /* -1 = none */
double msq_calibration_lambda0(const msq_calibration* cal, int i);
double msq_calibration_lambda1(const msq_calibration* cal, int i);
int msq_calibration_feasible_count(const msq_calibration* cal, int i);
int msq_calibration_total_runs(const msq_calibration* cal, int i);
double msq_calibration_feasible_pct(const msq_calibration* cal, int i);
/* NaN when the pair had no feasible run. */
double msq_calibration_best_sharpe(const msq_calibration* cal, int i);
void msq_calibration_free(msq_calibration* cal);

/* ---- repeated-solve statistics ------------------------------------------ */

msq_status msq_collect_statistics(const msq_model* model,
                                  const char* config_json, int n_feasible,
                                  int max_attempts, uint64_t seed, int threads,
                                  msq_statistics** out);
msq_status msq_statistics_save_json(const msq_statistics* stats,
                                    const char* path);
msq_status msq_statistics_save_csv(const msq_statistics* stats,
                                   const char* path);
int msq_statistics_collected(const msq_statistics* stats);
int msq_statistics_attempts_used(const msq_statistics* stats);
int msq_statistics_shortfall(const msq_statistics* stats);
double msq_statistics_sharpe_mean(const msq_statistics* stats);
double msq_statistics_sharpe_min(const msq_statistics* stats);
double msq_statistics_sharpe_max(const msq_statistics* stats);
double msq_statistics_sharpe_median(const msq_statistics* stats);
int msq_statistics_assets_min(const msq_statistics* stats);
int msq_statistics_assets_max(const msq_statistics* stats);
double msq_statistics_assets_mean(const msq_statistics* stats);
/* Writes the i-th collected solution as a standalone solution handle. */
msq_status msq_statistics_solution(const msq_statistics* stats, int i,
                                   msq_solution** out);
void msq_statistics_free(msq_statistics* stats);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MAXSHARPE_H */
