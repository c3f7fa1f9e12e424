// msq: build, solve and calibrate QUBO formulations of Max-Sharpe portfolio
// selection. Thin front end over the maxsharpe C API; every pipeline stage
// reads and writes JSON/CSV files so stages can be rerun and inspected
// independently.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxsharpe/maxsharpe.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

[[noreturn]] void fail(msq_status status) {
  std::cerr << "error: " << msq_status_name(status);
  const char* detail = msq_last_error();
  if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(kExitError);
}

void check(msq_status status) {
  if (status != MSQ_OK) fail(status);
}

struct PanelDeleter {
  void operator()(msq_panel* p) const { msq_panel_free(p); }
};
struct StatsDeleter {
  void operator()(msq_stats* p) const { msq_stats_free(p); }
};
struct ModelDeleter {
  void operator()(msq_model* p) const { msq_model_free(p); }
};
struct SolutionDeleter {
  void operator()(msq_solution* p) const { msq_solution_free(p); }
};
struct CalibrationDeleter {
  void operator()(msq_calibration* p) const { msq_calibration_free(p); }
};
struct StatisticsDeleter {
  void operator()(msq_statistics* p) const { msq_statistics_free(p); }
};

using PanelPtr = std::unique_ptr<msq_panel, PanelDeleter>;
using StatsPtr = std::unique_ptr<msq_stats, StatsDeleter>;
using ModelPtr = std::unique_ptr<msq_model, ModelDeleter>;
using SolutionPtr = std::unique_ptr<msq_solution, SolutionDeleter>;
using CalibrationPtr = std::unique_ptr<msq_calibration, CalibrationDeleter>;
using StatisticsPtr = std::unique_ptr<msq_statistics, StatisticsDeleter>;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitError);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Solver flags shared by solve and calibrate. A --solver-config file is the
// base; explicit flags override its fields.
struct SolverFlags {
  std::string config_path;
  std::string solver;
  std::optional<int> sweeps;
  std::optional<double> beta_start, beta_end;
  std::optional<int> restarts;
  std::optional<int> iterations;
  std::optional<int> tenure;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--solver-config", config_path,
                    "JSON solver config block");
    cmd->add_option("--solver", solver, "sa | tabu | exhaustive");
    cmd->add_option("--sweeps", sweeps, "SA sweeps per restart");
    cmd->add_option("--beta-start", beta_start, "initial inverse temperature");
    cmd->add_option("--beta-end", beta_end, "final inverse temperature");
    cmd->add_option("--restarts", restarts, "SA restarts");
    cmd->add_option("--iterations", iterations, "tabu iterations");
    cmd->add_option("--tenure", tenure, "tabu tenure");
    cmd->add_option("--seed", seed, "solver seed");
  }

  std::string to_json() const {
    json config = json::object();
    if (!config_path.empty()) {
      config = json::parse(slurp(config_path), nullptr, false);
      if (config.is_discarded() || !config.is_object()) {
        std::cerr << "error: bad solver config " << config_path << "\n";
        std::exit(kExitError);
      }
    }
    if (!solver.empty()) config["solver"] = solver;
    if (sweeps) config["sweeps"] = *sweeps;
    if (beta_start) config["beta_start"] = *beta_start;
    if (beta_end) config["beta_end"] = *beta_end;
    if (restarts) config["restarts"] = *restarts;
    if (iterations) config["iterations"] = *iterations;
    if (tenure) config["tenure"] = *tenure;
    if (seed) config["seed"] = *seed;
    return config.dump();
  }
};

// ------------------------------------------------------------------ synth --

int cmd_synth(int assets, int days, std::uint64_t seed,
              const std::string& start_date, double missing_rate,
              const std::string& out) {
  msq_synth_params params{};
  params.assets = assets;
  params.days = days;
  params.seed = seed;
  params.start_date = start_date.empty() ? nullptr : start_date.c_str();
  params.missing_rate = missing_rate;

  msq_panel* raw = nullptr;
  check(msq_panel_synth(&params, &raw));
  PanelPtr panel(raw);
  check(msq_panel_save_csv(panel.get(), out.c_str()));
  std::cout << "wrote " << out << " (" << msq_panel_num_dates(panel.get())
            << " days x " << msq_panel_num_assets(panel.get())
            << " assets)\n";
  return 0;
}

// ---------------------------------------------------------------- prepare --

int cmd_prepare(const std::string& prices, const std::string& returns,
                int frequency, int max_gap, const std::string& out_dir) {
  fs::create_directories(out_dir);

  msq_panel* raw = nullptr;
  check(msq_panel_load_csv(prices.c_str(), &raw));
  PanelPtr loaded(raw);

  msq_panel* cleaned_raw = nullptr;
  check(msq_panel_clean(loaded.get(), max_gap, &cleaned_raw));
  PanelPtr cleaned(cleaned_raw);

  double jb_simple = 0.0, jb_log = 0.0;
  check(msq_normality_pooled(cleaned.get(), "simple", &jb_simple));
  check(msq_normality_pooled(cleaned.get(), "log", &jb_log));

  std::string selected = returns;
  if (selected == "auto") selected = jb_log <= jb_simple ? "log" : "simple";

  const auto path = [&](const char* name) {
    return (fs::path(out_dir) / name).string();
  };
  check(msq_write_normality_report(cleaned.get(), selected.c_str(),
                                   path("normality.json").c_str()));
  check(msq_write_qq_csv(cleaned.get(), "simple", 256,
                         path("qq_simple.csv").c_str()));
  check(msq_write_qq_csv(cleaned.get(), "log", 256,
                         path("qq_log.csv").c_str()));

  msq_stats* stats_raw = nullptr;
  check(msq_stats_compute(cleaned.get(), selected.c_str(), frequency, 1,
                          &stats_raw));
  StatsPtr stats(stats_raw);
  check(msq_stats_save_json(stats.get(), path("stats.json").c_str()));

  std::cout << "panel: " << msq_panel_num_dates(loaded.get()) << " days x "
            << msq_panel_num_assets(loaded.get()) << " assets ("
            << msq_panel_num_assets(cleaned.get()) << " after cleaning)\n"
            << "pooled JB: simple " << jb_simple << ", log " << jb_log
            << " -> " << selected << " returns\n"
            << "investable assets: " << msq_stats_num_assets(stats.get())
            << "\nwrote " << path("stats.json") << "\n";
  return 0;
}

// ------------------------------------------------------------------ build --

int cmd_build(const std::string& stats_path, const std::string& kind, int bits,
              double step, double lambda0, double lambda1,
              const std::string& out, const std::string& qubo_text) {
  msq_stats* stats_raw = nullptr;
  check(msq_stats_load_json(stats_path.c_str(), &stats_raw));
  StatsPtr stats(stats_raw);

  msq_model* model_raw = nullptr;
  check(msq_model_build(stats.get(), kind.c_str(), bits, step, lambda0,
                        lambda1, &model_raw));
  ModelPtr model(model_raw);
  check(msq_model_save_json(model.get(), out.c_str()));
  if (!qubo_text.empty())
    check(msq_model_save_qubo_text(model.get(), qubo_text.c_str()));

  const int n = msq_model_num_variables(model.get());
  const double pairs = double(n) * double(n + 1) / 2.0;
  const double density = pairs > 0 ? double(msq_model_num_terms(model.get())) / pairs : 0.0;
  std::cout << kind << " model: " << msq_model_num_assets(model.get())
            << " assets x " << msq_model_bits_per_asset(model.get())
            << " bits = " << n << " variables, "
            << msq_model_num_terms(model.get()) << " terms (density "
            << density << ")\nwrote " << out << "\n";
  return 0;
}

// ------------------------------------------------------------------ solve --

void print_solution(const msq_solution* sol) {
  const double sharpe = msq_solution_sharpe(sol);
  std::cout << (msq_solution_feasible(sol) ? "feasible" : "INFEASIBLE")
            << ", energy " << msq_solution_energy(sol) << ", residual "
            << msq_solution_residual(sol) << ", sharpe ";
  if (std::isnan(sharpe))
    std::cout << "n/a";
  else
    std::cout << sharpe;
  std::cout << ", " << msq_solution_assets_selected(sol) << " assets\n";
}

int cmd_solve(const std::string& model_path, const SolverFlags& flags,
              int threads, const std::string& out, int collect,
              int max_attempts, const std::string& stats_out,
              const std::string& stats_csv, const std::string& solutions_dir) {
  msq_model* model_raw = nullptr;
  check(msq_model_load_json(model_path.c_str(), &model_raw));
  ModelPtr model(model_raw);
  const std::string config = flags.to_json();

  if (collect <= 0) {
    msq_solution* sol_raw = nullptr;
    check(msq_solve(model.get(), config.c_str(), threads, &sol_raw));
    SolutionPtr sol(sol_raw);
    if (!out.empty()) check(msq_solution_save_json(sol.get(), out.c_str()));
    print_solution(sol.get());
    if (!out.empty()) std::cout << "wrote " << out << "\n";
    return msq_solution_feasible(sol.get()) ? 0 : kExitInfeasible;
  }

  const std::uint64_t seed = flags.seed.value_or(0);
  if (max_attempts < collect) max_attempts = 10 * collect;
  msq_statistics* stats_raw = nullptr;
  check(msq_collect_statistics(model.get(), config.c_str(), collect,
                               max_attempts, seed, threads, &stats_raw));
  StatisticsPtr stats(stats_raw);
  if (!stats_out.empty())
    check(msq_statistics_save_json(stats.get(), stats_out.c_str()));
  if (!stats_csv.empty())
    check(msq_statistics_save_csv(stats.get(), stats_csv.c_str()));
  if (!solutions_dir.empty()) {
    fs::create_directories(solutions_dir);
    for (int i = 0; i < msq_statistics_collected(stats.get()); ++i) {
      msq_solution* sol_raw = nullptr;
      check(msq_statistics_solution(stats.get(), i, &sol_raw));
      SolutionPtr sol(sol_raw);
      char name[32];
      std::snprintf(name, sizeof name, "solution_%03d.json", i);
      check(msq_solution_save_json(sol.get(),
                                   (fs::path(solutions_dir) / name).c_str()));
    }
  }
  const int collected = msq_statistics_collected(stats.get());
  std::cout << "collected " << collected << "/" << collect
            << " feasible solutions in "
            << msq_statistics_attempts_used(stats.get()) << " attempts";
  if (collected > 0)
    std::cout << "; sharpe mean " << msq_statistics_sharpe_mean(stats.get())
              << " [" << msq_statistics_sharpe_min(stats.get()) << ", "
              << msq_statistics_sharpe_max(stats.get()) << "]";
  std::cout << "\n";
  return msq_statistics_shortfall(stats.get()) ? kExitInfeasible : 0;
}

// --------------------------------------------------------------- calibrate --

int cmd_calibrate(const std::string& stats_path, const std::string& kind,
                  const std::string& grid_path, const SolverFlags& flags,
                  int bits, double step, int runs, int threads,
                  const std::string& out, const std::string& csv) {
  // The single --seed flag drives the per-run seed derivation.
  const std::uint64_t seed = flags.seed.value_or(0);
  msq_stats* stats_raw = nullptr;
  check(msq_stats_load_json(stats_path.c_str(), &stats_raw));
  StatsPtr stats(stats_raw);

  json grid = json::parse(slurp(grid_path), nullptr, false);
  if (grid.is_discarded()) {
    std::cerr << "error: bad grid file " << grid_path << "\n";
    return kExitError;
  }
  if (runs > 0) grid["runs_per_pair"] = runs;

  msq_calibration* cal_raw = nullptr;
  const msq_status status =
      msq_calibrate(stats.get(), kind.c_str(), grid.dump().c_str(),
                    flags.to_json().c_str(), bits, step, seed, threads,
                    &cal_raw);
  if (status != MSQ_OK && cal_raw == nullptr) fail(status);
  CalibrationPtr cal(cal_raw);

  if (!out.empty()) check(msq_calibration_save_json(cal.get(), out.c_str()));
  if (!csv.empty()) check(msq_calibration_save_csv(cal.get(), csv.c_str()));

  const int pairs = msq_calibration_num_pairs(cal.get());
  std::printf("%10s %10s %9s %9s %12s\n", "lambda0", "lambda1", "feasible",
              "pct", "best_sharpe");
  for (int i = 0; i < pairs; ++i) {
    const double best = msq_calibration_best_sharpe(cal.get(), i);
    char best_cell[32] = "-";
    if (!std::isnan(best)) std::snprintf(best_cell, sizeof best_cell, "%.4f", best);
    std::printf("%10g %10g %4d/%-4d %8.0f%% %12s\n",
                msq_calibration_lambda0(cal.get(), i),
                msq_calibration_lambda1(cal.get(), i),
                msq_calibration_feasible_count(cal.get(), i),
                msq_calibration_total_runs(cal.get(), i),
                100.0 * msq_calibration_feasible_pct(cal.get(), i),
                best_cell);
  }
  const int chosen = msq_calibration_chosen_index(cal.get());
  if (chosen >= 0) {
    std::cout << "chosen: lambda0 = "
              << msq_calibration_lambda0(cal.get(), chosen)
              << ", lambda1 = " << msq_calibration_lambda1(cal.get(), chosen)
              << "\n";
  } else {
    std::cerr << "no feasible configuration\n";
    return kExitError;
  }
  if (!out.empty()) std::cout << "wrote " << out << "\n";
  return 0;
}

// ------------------------------------------------------------------ report --

struct Group {
  std::string kind, solver;
  std::vector<double> sharpes;
  std::vector<int> asset_counts;
  int total = 0;
};

int cmd_report(const std::string& stats_path,
               const std::vector<std::string>& solution_paths, bool baseline,
               const std::string& out) {
  if (solution_paths.empty()) {
    std::cerr << "error: no solution files given\n";
    return kExitError;
  }
  StatsPtr stats;
  if (!stats_path.empty()) {
    msq_stats* stats_raw = nullptr;
    check(msq_stats_load_json(stats_path.c_str(), &stats_raw));
    stats.reset(stats_raw);
  }

  std::vector<Group> groups;
  std::vector<std::string> universe;
  for (const auto& path : solution_paths) {
    msq_solution* sol_raw = nullptr;
    check(msq_solution_load_json(path.c_str(), &sol_raw));
    SolutionPtr sol(sol_raw);

    std::vector<std::string> assets;
    for (int i = 0; i < msq_solution_num_assets(sol.get()); ++i)
      assets.emplace_back(msq_solution_asset(sol.get(), i));
    if (universe.empty()) {
      universe = assets;
      if (stats) {
        std::vector<std::string> stats_assets;
        for (int i = 0; i < msq_stats_num_assets(stats.get()); ++i)
          stats_assets.emplace_back(msq_stats_asset(stats.get(), i));
        if (stats_assets != universe) {
          std::cerr << "error: inconsistent asset universes (stats vs "
                    << path << ")\n";
          return kExitError;
        }
      }
    } else if (assets != universe) {
      std::cerr << "error: inconsistent asset universes across inputs ("
                << path << ")\n";
      return kExitError;
    }

    const std::string kind = msq_solution_kind(sol.get());
    std::string solver = "?";
    {
      // The solver name rides along in the solution file.
      const json j = json::parse(slurp(path), nullptr, false);
      if (j.is_object() && j.contains("solver") && j["solver"].is_string())
        solver = j["solver"].get<std::string>();
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.kind == kind && g.solver == solver;
    });
    if (it == groups.end()) {
      groups.push_back({kind, solver, {}, {}, 0});
      it = std::prev(groups.end());
    }
    ++it->total;
    if (msq_solution_feasible(sol.get())) {
      it->sharpes.push_back(msq_solution_sharpe(sol.get()));
      it->asset_counts.push_back(msq_solution_assets_selected(sol.get()));
    }
  }

  std::ostringstream csv;
  csv << "group,kind,solver,n_solutions,n_feasible,sharpe_min,sharpe_max,"
         "sharpe_mean,sharpe_median,asset_count_min,asset_count_max,"
         "asset_count_mean\n";
  char line[512];
  for (auto& g : groups) {
    std::sort(g.sharpes.begin(), g.sharpes.end());
    const auto n = g.sharpes.size();
    double mean = 0.0;
    for (double s : g.sharpes) mean += s;
    if (n > 0) mean /= double(n);
    const double median =
        n == 0 ? 0.0
               : (n % 2 == 1 ? g.sharpes[n / 2]
                             : (g.sharpes[n / 2 - 1] + g.sharpes[n / 2]) / 2.0);
    int amin = 0, amax = 0;
    double amean = 0.0;
    if (!g.asset_counts.empty()) {
      amin = *std::min_element(g.asset_counts.begin(), g.asset_counts.end());
      amax = *std::max_element(g.asset_counts.begin(), g.asset_counts.end());
      for (int c : g.asset_counts) amean += c;
      amean /= double(g.asset_counts.size());
    }
    if (n == 0) {
      std::snprintf(line, sizeof line, "qubo,%s,%s,%d,0,,,,,,,\n",
                    g.kind.c_str(), g.solver.c_str(), g.total);
    } else {
      std::snprintf(line, sizeof line,
                    "qubo,%s,%s,%d,%zu,%.12g,%.12g,%.12g,%.12g,%d,%d,%.12g\n",
                    g.kind.c_str(), g.solver.c_str(), g.total, n,
                    g.sharpes.front(), g.sharpes.back(), mean, median, amin,
                    amax, amean);
    }
    csv << line;
    std::cout << g.kind << "/" << g.solver << ": " << n << "/" << g.total
              << " feasible, sharpe mean " << mean << " max "
              << (n ? g.sharpes.back() : 0.0) << "\n";
  }

  if (baseline && stats) {
    const int n_assets = msq_stats_num_assets(stats.get());
    std::vector<double> weights(std::size_t(n_assets), 0.0);
    double sharpe = 0.0;
    check(msq_classical_max_sharpe(stats.get(), 0, 0.0, weights.data(),
                                   &sharpe));
    int selected = 0;
    for (double w : weights)
      if (w > 0.0) ++selected;
    std::snprintf(line, sizeof line,
                  "classical,,,1,1,%.12g,%.12g,%.12g,%.12g,%d,%d,%d\n", sharpe,
                  sharpe, sharpe, sharpe, selected, selected, selected);
    csv << line;
    std::cout << "classical baseline: sharpe " << sharpe << ", " << selected
              << " assets\n";
  }

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitError;
    }
    f << csv.str();
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO formulations of Max-Sharpe portfolio optimization"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic price CSV");
  int s_assets = 10, s_days = 756;
  std::uint64_t s_seed = 42;
  double s_missing = 0.0;
  std::string s_start, s_out = "prices.csv";
  synth->add_option("--assets", s_assets, "number of assets");
  synth->add_option("--days", s_days, "number of trading days");
  synth->add_option("--seed", s_seed, "generator seed");
  synth->add_option("--start-date", s_start, "first date (ISO-8601)");
  synth->add_option("--missing-rate", s_missing, "fraction of missing cells");
  synth->add_option("--out", s_out, "output CSV path");

  // prepare
  auto* prepare =
      app.add_subcommand("prepare", "price CSV -> annualized stats JSON");
  std::string p_prices, p_returns = "auto", p_out = ".";
  int p_frequency = 252, p_max_gap = 1;
  prepare->add_option("prices", p_prices, "input price CSV")->required();
  prepare->add_option("--returns", p_returns, "simple | log | auto")
      ->check(CLI::IsMember({"simple", "log", "auto"}));
  prepare->add_option("--frequency", p_frequency, "periods per year");
  prepare->add_option("--max-gap", p_max_gap,
                      "max consecutive missing prices before dropping");
  prepare->add_option("--out", p_out, "output directory");

  // build
  auto* build = app.add_subcommand("build", "stats JSON -> QUBO model JSON");
  std::string b_stats, b_kind = "proposed", b_out = "model.json", b_qubo_text;
  int b_bits = 0;
  double b_step = 0.0, b_lambda0 = 1.0, b_lambda1 = 300.0;
  build->add_option("--stats", b_stats, "stats JSON")->required();
  build->add_option("--kind", b_kind, "proxy | proposed")
      ->check(CLI::IsMember({"proxy", "proposed"}));
  build->add_option("--bits", b_bits, "bits per asset (0 = default)");
  build->add_option("--step", b_step,
                    "proposed discretization step (0 = auto-fit)");
  build->add_option("--lambda0", b_lambda0, "objective weight");
  build->add_option("--lambda1", b_lambda1, "constraint weight");
  build->add_option("--out", b_out, "output model JSON");
  build->add_option("--qubo-text", b_qubo_text,
                    "also write plain-text QUBO triplets");

  // solve
  auto* solve = app.add_subcommand("solve", "model JSON -> solution JSON");
  std::string v_model, v_out = "solution.json", v_stats_out, v_stats_csv,
              v_solutions_dir;
  int v_threads = 0, v_collect = 0, v_max_attempts = 0;
  SolverFlags v_flags;
  solve->add_option("--model", v_model, "model JSON")->required();
  v_flags.attach(solve);
  solve->add_option("--threads", v_threads, "worker threads (0 = all cores)");
  solve->add_option("--out", v_out, "output solution JSON");
  solve->add_option("--collect", v_collect,
                    "collect N feasible solutions instead of one solve");
  solve->add_option("--max-attempts", v_max_attempts,
                    "attempt budget when collecting");
  solve->add_option("--stats-out", v_stats_out, "run statistics JSON");
  solve->add_option("--stats-csv", v_stats_csv, "run statistics CSV");
  solve->add_option("--solutions-dir", v_solutions_dir,
                    "write each collected solution here");

  // calibrate
  auto* calibrate =
      app.add_subcommand("calibrate", "grid-search lambda0/lambda1");
  std::string c_stats, c_kind = "proposed", c_grid, c_out = "calibration.json",
              c_csv;
  int c_bits = 0, c_runs = 0, c_threads = 0;
  double c_step = 0.0;
  SolverFlags c_flags;
  calibrate->add_option("--stats", c_stats, "stats JSON")->required();
  calibrate->add_option("--kind", c_kind, "proxy | proposed")
      ->check(CLI::IsMember({"proxy", "proposed"}));
  calibrate->add_option("--grid", c_grid, "lambda grid JSON")->required();
  c_flags.attach(calibrate);
  calibrate->add_option("--bits", c_bits, "bits per asset (0 = default)");
  calibrate->add_option("--step", c_step,
                        "proposed discretization step (0 = auto-fit)");
  calibrate->add_option("--runs", c_runs, "runs per pair (overrides grid)");
  calibrate->add_option("--threads", c_threads, "worker threads");
  calibrate->add_option("--out", c_out, "calibration report JSON");
  calibrate->add_option("--csv", c_csv, "calibration report CSV");

  // report
  auto* report =
      app.add_subcommand("report", "summarize solutions vs the baseline");
  std::string r_stats, r_out = "summary.csv";
  std::vector<std::string> r_solutions;
  bool r_no_baseline = false;
  report->add_option("--stats", r_stats, "stats JSON (for the baseline)");
  report->add_option("solutions", r_solutions, "solution JSON files");
  report->add_flag("--no-baseline", r_no_baseline,
                   "skip the classical baseline row");
  report->add_option("--out", r_out, "summary CSV path");

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed())
    return cmd_synth(s_assets, s_days, s_seed, s_start, s_missing, s_out);
  if (prepare->parsed())
    return cmd_prepare(p_prices, p_returns, p_frequency, p_max_gap, p_out);
  if (build->parsed())
    return cmd_build(b_stats, b_kind, b_bits, b_step, b_lambda0, b_lambda1,
                     b_out, b_qubo_text);
  if (solve->parsed())
    return cmd_solve(v_model, v_flags, v_threads, v_out, v_collect,
                     v_max_attempts, v_stats_out, v_stats_csv,
                     v_solutions_dir);
  if (calibrate->parsed())
    return cmd_calibrate(c_stats, c_kind, c_grid, c_flags, c_bits, c_step,
                         c_runs, c_threads, c_out, c_csv);
  if (report->parsed())
    return cmd_report(r_stats, r_solutions, !r_no_baseline, r_out);
  return kExitError;
}
