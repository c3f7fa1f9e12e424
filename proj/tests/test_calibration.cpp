#include <doctest.h>

#include "core/calibration.hpp"
#include "test_util.hpp"

using namespace msq;

namespace {

SolverConfig quick_sa(std::uint64_t seed = 0) {
  SolverConfig config;
  config.solver = SolverKind::sa;
  config.sweeps = 400;
  config.restarts = 3;
  config.seed = seed;
  return config;
}

LambdaGrid small_grid() {
  LambdaGrid grid;
  grid.pairs = {{1.0, 100.0}, {1.0, 300.0}};
  grid.runs_per_pair = 5;
  return grid;
}

}  // namespace

TEST_CASE("calibrate: deterministic and structurally sound") {
  const auto stats = test::random_stats(4, 3000);
  const auto grid = small_grid();
  BuildOptions options;
  options.bits_per_asset = 6;

  const auto a = calibrate(FormulationKind::proposed, stats, grid, quick_sa(),
                           42, 1, options);
  const auto b = calibrate(FormulationKind::proposed, stats, grid, quick_sa(),
                           42, 2, options);
  REQUIRE(a.records.size() == 2);
  CHECK(a.chosen_index == b.chosen_index);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].feasible_count == b.records[i].feasible_count);
    CHECK(a.records[i].best_sharpe == b.records[i].best_sharpe);
    CHECK(a.records[i].total_runs == 5);
    CHECK(a.records[i].feasible_pct ==
          double(a.records[i].feasible_count) / 5.0);
  }

  // Chosen pair maximizes feasibility percentage.
  for (const auto& r : a.records)
    CHECK(a.chosen().feasible_pct >= r.feasible_pct);
}

TEST_CASE("calibrate: identical pairs produce identical records") {
  const auto stats = test::random_stats(3, 3001);
  LambdaGrid grid;
  grid.pairs = {{0.8, 200.0}, {0.8, 200.0}};
  grid.runs_per_pair = 4;
  BuildOptions options;
  options.bits_per_asset = 5;
  const auto report = calibrate(FormulationKind::proposed, stats, grid,
                                quick_sa(), 7, 1, options);
  REQUIRE(report.records.size() == 2);
  CHECK(report.records[0].feasible_count == report.records[1].feasible_count);
  CHECK(report.records[0].best_sharpe == report.records[1].best_sharpe);
  CHECK(report.records[0].mean_sharpe_feasible ==
        report.records[1].mean_sharpe_feasible);
}

TEST_CASE("calibrate: vanishing constraint weight rarely feasible") {
  // The grid type requires positive lambdas; a near-zero lambda1 stands in
  // for the unconstrained limit, which ignores mu^T y = 1.
  const auto stats = test::random_stats(5, 3002);
  LambdaGrid grid;
  grid.pairs = {{1.0, 1e-9}, {1.0, 400.0}};
  grid.runs_per_pair = 6;
  BuildOptions options;
  options.bits_per_asset = 6;
  const auto report = calibrate(FormulationKind::proposed, stats, grid,
                                quick_sa(), 11, 2, options);
  CHECK(report.records[0].feasible_count <= report.records[1].feasible_count);
  CHECK(report.chosen_index == 1);
}

TEST_CASE("calibrate: zero feasible everywhere raises with report attached") {
  const auto stats = test::random_stats(4, 3003);
  LambdaGrid grid;
  grid.pairs = {{1.0, 1e-12}};
  grid.runs_per_pair = 3;
  BuildOptions options;
  options.bits_per_asset = 6;
  try {
    calibrate(FormulationKind::proposed, stats, grid, quick_sa(), 5, 1,
              options);
    // Exceedingly unlikely; if it happens the instance is feasible and the
    // contract is vacuous.
  } catch (const NoFeasibleError& e) {
    CHECK(e.report().records.size() == 1);
    CHECK(e.report().chosen_index == -1);
    CHECK(e.report().records[0].feasible_count == 0);
  }
}

TEST_CASE("calibrate: tie-break prefers higher sharpe then lower lambda1") {
  CalibrationReport report;
  // Synthesize the selection inputs by running calibrate on a grid whose
  // outcomes tie; instead verify the rule directly on records.
  // Build via the public API: identical pair twice plus a dominated pair.
  const auto stats = test::random_stats(3, 3004);
  LambdaGrid grid;
  grid.pairs = {{1.0, 500.0}, {1.0, 300.0}};
  grid.runs_per_pair = 4;
  BuildOptions options;
  options.bits_per_asset = 5;
  report = calibrate(FormulationKind::proposed, stats, grid, quick_sa(), 13, 1,
                     options);
  const auto& chosen = report.chosen();
  for (const auto& r : report.records) {
    CHECK(chosen.feasible_pct >= r.feasible_pct);
    if (chosen.feasible_pct == r.feasible_pct &&
        chosen.best_sharpe && r.best_sharpe &&
        *chosen.best_sharpe == *r.best_sharpe)
      CHECK(chosen.lambda1 <= r.lambda1);
  }
}

TEST_CASE("lambda1 monotonicity of the penalty on a fixed infeasible state") {
  const auto stats = test::random_stats(3, 3005);
  BuildOptions options;
  options.bits_per_asset = 4;
  const auto low = build_formulation(FormulationKind::proposed, stats, 1.0,
                                     100.0, options);
  const auto high = build_formulation(FormulationKind::proposed, stats, 1.0,
                                      500.0, options);
  SplitMix64 rng(3006);
  for (int trial = 0; trial < 50; ++trial) {
    const Bits x = test::random_bits(12, rng);
    const auto sol = decode_proposed(x, low.disc, stats.mu);
    if (sol.residual <= low.default_tolerance()) continue;  // infeasible only
    const double h0 = low.matrix.evaluate(x) - 100.0 * sol.residual * sol.residual;
    const double h0_high =
        high.matrix.evaluate(x) - 500.0 * sol.residual * sol.residual;
    // Same H0 under both weights; the penalty share never decreases.
    CHECK(std::abs(h0 - h0_high) <= 1e-6 * std::max(1.0, std::abs(h0)));
    CHECK(high.matrix.evaluate(x) >= low.matrix.evaluate(x) - 1e-9);
  }
}

TEST_CASE("collect_statistics: single-asset proxy forces the portfolio") {
  const auto stats = test::random_stats(1, 3007);
  const auto model =
      build_formulation(FormulationKind::proxy, stats, 1.0, 200.0, {});
  const auto run = collect_statistics(model, quick_sa(), 5, 50, 17, 1);
  CHECK(!run.shortfall);
  REQUIRE(run.solutions.size() == 5);
  const double expected_sharpe = stats.mu(0) / stats.sigma(0);
  for (const auto& rec : run.solutions) {
    CHECK(rec.solution.feasible);
    CHECK(assets_selected(rec.solution) == 1);
    CHECK(*rec.solution.sharpe == doctest::Approx(expected_sharpe));
  }
  CHECK(run.assets_min == 1);
  CHECK(run.assets_max == 1);
  CHECK(run.sharpe_min == doctest::Approx(run.sharpe_max));
}

TEST_CASE("collect_statistics: internal consistency on a 5-asset instance") {
  const auto stats = test::random_stats(5, 3008);
  BuildOptions options;
  options.bits_per_asset = 6;
  const auto model = build_formulation(FormulationKind::proposed, stats, 1.0,
                                       300.0, options);
  const auto run = collect_statistics(model, quick_sa(), 10, 200, 23, 2);
  REQUIRE(!run.shortfall);
  REQUIRE(run.solutions.size() == 10);
  for (const auto& rec : run.solutions) {
    CHECK(rec.solution.feasible);
    CHECK(feasibility(rec.solution, model.kind, model.default_tolerance()));
    CHECK(rec.solution.energy ==
          doctest::Approx(model.matrix.evaluate(rec.solution.bits))
              .epsilon(1e-10));
  }
  CHECK(run.assets_mean >= run.assets_min);
  CHECK(run.assets_mean <= run.assets_max);
  CHECK(run.sharpe_median >= run.sharpe_min);
  CHECK(run.sharpe_median <= run.sharpe_max);

  // Determinism across thread counts.
  const auto again = collect_statistics(model, quick_sa(), 10, 200, 23, 1);
  REQUIRE(again.solutions.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(again.solutions[i].attempt == run.solutions[i].attempt);
    CHECK(again.solutions[i].solution.bits == run.solutions[i].solution.bits);
  }
}

TEST_CASE("collect_statistics: shortfall flagged when attempts run out") {
  const auto stats = test::random_stats(4, 3009);
  BuildOptions options;
  options.bits_per_asset = 6;
  // Hopeless constraint weight: essentially never feasible.
  const auto model = build_formulation(FormulationKind::proposed, stats, 1.0,
                                       1e-12, options);
  const auto run = collect_statistics(model, quick_sa(), 3, 6, 29, 1);
  CHECK(run.shortfall);
  CHECK(run.attempts_used == 6);
  CHECK(int(run.solutions.size()) < 3);
}

TEST_CASE("grid validation") {
  LambdaGrid grid;
  CHECK_THROWS_AS(grid.validate(), Error);
  grid.pairs = {{1.0, 0.0}};
  CHECK_THROWS_AS(grid.validate(), Error);
  grid.pairs = {{1.0, 1.0}};
  grid.runs_per_pair = 0;
  CHECK_THROWS_AS(grid.validate(), Error);
}
