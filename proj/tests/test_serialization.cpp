#include <doctest.h>

#include <sstream>

#include "core/calibration.hpp"
#include "core/serialization.hpp"
#include "test_util.hpp"

using namespace msq;

TEST_CASE("stats json round trip") {
  const auto stats = test::random_stats(4, 5000);
  const auto text = stats_to_json(stats);
  const auto back = stats_from_json(text);
  CHECK(back.assets == stats.assets);
  CHECK((back.mu - stats.mu).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.cov - stats.cov).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.corr - stats.corr).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.frequency == stats.frequency);
}

TEST_CASE("qubo json and text round trips preserve energies") {
  const auto q = test::random_qubo(8, 5001, 0.6);
  const auto from_json = qubo_from_json(qubo_to_json(q));

  std::stringstream ss;
  write_qubo_text(q, ss);
  const auto from_text = read_qubo_text(ss);

  SplitMix64 rng(5002);
  for (int trial = 0; trial < 32; ++trial) {
    const Bits x = test::random_bits(8, rng);
    CHECK(from_json.evaluate(x) == q.evaluate(x));
    CHECK(from_text.evaluate(x) == q.evaluate(x));
  }
}

TEST_CASE("qubo text format shape") {
  QuboBuilder builder(2);
  builder.add(0, 1, 1.5).add(1, 1, -2.0).add_offset(0.25);
  std::stringstream ss;
  write_qubo_text(builder.build(), ss);
  CHECK(ss.str() == "# offset 0.25\n0 1 1.5\n1 1 -2\n");
}

TEST_CASE("model json round trip") {
  const auto stats = test::random_stats(3, 5003);
  const auto model =
      build_formulation(FormulationKind::proposed, stats, 0.7, 300.0,
                        BuildOptions{.bits_per_asset = 4});
  const auto back = model_from_json(model_to_json(model));
  CHECK(back.kind == model.kind);
  CHECK(back.lambda0 == model.lambda0);
  CHECK(back.lambda1 == model.lambda1);
  CHECK(back.assets == model.assets);
  CHECK(back.disc.coeffs == model.disc.coeffs);
  CHECK(back.mu_min == model.mu_min);
  CHECK(back.matrix.size() == model.matrix.size());
  REQUIRE(back.matrix.terms().size() == model.matrix.terms().size());
  SplitMix64 rng(5004);
  for (int trial = 0; trial < 20; ++trial) {
    const Bits x = test::random_bits(12, rng);
    CHECK(back.matrix.evaluate(x) == model.matrix.evaluate(x));
  }
}

TEST_CASE("solution json round trip, proposed fields") {
  const auto stats = test::random_stats(2, 5005);
  const auto model =
      build_formulation(FormulationKind::proposed, stats, 1.0, 100.0,
                        BuildOptions{.bits_per_asset = 3});
  SplitMix64 rng(5006);
  const auto sol = decode_solution(model, test::random_bits(6, rng));
  const auto text =
      solution_to_json(sol, model.kind, model.assets, "sa", 12.5);
  const auto loaded = solution_from_json(text);
  CHECK(loaded.kind == FormulationKind::proposed);
  CHECK(loaded.assets == model.assets);
  CHECK(loaded.solver == "sa");
  CHECK(loaded.solution.bits == sol.bits);
  CHECK(loaded.solution.residual == sol.residual);
  CHECK(loaded.solution.energy == sol.energy);
  CHECK(loaded.solution.feasible == sol.feasible);
  CHECK(loaded.solution.k == sol.k);
  CHECK((loaded.solution.y - sol.y).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loaded.solution.sharpe.has_value() == sol.sharpe.has_value());
}

TEST_CASE("solver config block parses with defaults and round trips") {
  const auto defaults = solver_config_from_json("{}");
  CHECK(defaults.solver == SolverKind::sa);
  CHECK(defaults.sweeps == 2000);
  CHECK(!defaults.beta_start.has_value());

  const auto config = solver_config_from_json(
      R"({"solver":"tabu","iterations":1234,"tenure":7,"seed":99})");
  CHECK(config.solver == SolverKind::tabu);
  CHECK(config.iterations == 1234);
  CHECK(config.tenure == 7);
  CHECK(config.seed == 99);

  const auto echoed = solver_config_from_json(solver_config_to_json(config));
  CHECK(echoed.solver == config.solver);
  CHECK(echoed.iterations == config.iterations);
  CHECK(echoed.seed == config.seed);

  CHECK_THROWS_AS(solver_config_from_json("not json"), Error);
  CHECK_THROWS_AS(solver_config_from_json(R"({"solver":"qpu"})"), Error);
}

TEST_CASE("lambda grid parses") {
  const auto grid =
      grid_from_json(R"({"pairs":[[1.2631,300],[0.7,300]],"runs_per_pair":20})");
  REQUIRE(grid.pairs.size() == 2);
  CHECK(grid.pairs[0].first == 1.2631);
  CHECK(grid.pairs[1].second == 300.0);
  CHECK(grid.runs_per_pair == 20);
  CHECK_THROWS_AS(grid_from_json(R"({"pairs":[]})"), Error);
}

TEST_CASE("calibration report serializes") {
  CalibrationReport report;
  report.kind = FormulationKind::proxy;
  report.runs_per_pair = 20;
  report.records.push_back({1.2631, 300.0, 15, 20, 0.75, 1.1, 1.05});
  report.records.push_back({2.0, 300.0, 0, 20, 0.0, std::nullopt, std::nullopt});
  report.chosen_index = 0;

  const auto text = calibration_to_json(report);
  CHECK(text.find("\"chosen\"") != std::string::npos);
  CHECK(text.find("1.2631") != std::string::npos);

  std::stringstream csv;
  write_calibration_csv(report, csv);
  const auto lines = csv.str();
  CHECK(lines.find("lambda0,lambda1,feasible_count") == 0);
  CHECK(lines.find(",,0\n") != std::string::npos);  // null sharpe cells
}

TEST_CASE("bits string round trip") {
  const Bits bits{1, 0, 0, 1, 1};
  CHECK(bits_to_string(bits) == "10011");
  CHECK(bits_from_string("10011") == bits);
  CHECK_THROWS_AS(bits_from_string("10x"), Error);
}

TEST_CASE("malformed inputs raise parse errors") {
  CHECK_THROWS_AS(stats_from_json("{"), Error);
  CHECK_THROWS_AS(model_from_json("[]"), Error);
  std::stringstream bad("# offset x\n0 zero 1\n");
  CHECK_THROWS_AS(read_qubo_text(bad), Error);
}
