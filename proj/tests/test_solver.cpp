#include <doctest.h>

#include "core/solver.hpp"
#include "test_util.hpp"

using namespace msq;

namespace {

// Naive scan oracle: enumerate bitstrings in counting order, keep the first
// strict minimum. Independent of the Gray-code path under test.
Sample naive_minimum(const QuboMatrix& q) {
  const std::uint32_t n = q.size();
  Sample best{Bits(n, 0), q.evaluate(Bits(n, 0))};
  for (std::uint64_t m = 1; m < (1ULL << n); ++m) {
    const Bits x = test::bits_from_counter(m, n);
    const double e = q.evaluate(x);
    if (e < best.energy) best = {x, e};
  }
  return best;
}

}  // namespace

TEST_CASE("simulated annealing: one-variable landscape") {
  QuboBuilder builder(1);
  builder.add(0, 0, -5.0);
  const auto q = builder.build();
  AnnealSchedule schedule;
  schedule.sweeps = 50;
  schedule.restarts = 4;
  schedule.seed = 1;
  const auto result = simulated_annealing(q, schedule);
  CHECK(result.best_energy == -5.0);
  CHECK(result.best_bits == Bits{1});
  REQUIRE(result.samples.size() == 4);
  for (const auto& s : result.samples) CHECK(s.energy == -5.0);
}

TEST_CASE("simulated annealing: penalty minimum selects one bit") {
  const std::vector<double> coeffs{1.0, 1.0, 1.0};
  const auto q = equality_penalty(coeffs, 1.0);
  AnnealSchedule schedule;
  schedule.sweeps = 200;
  schedule.restarts = 5;
  schedule.seed = 3;
  const auto result = simulated_annealing(q, schedule);
  CHECK(result.best_energy == doctest::Approx(0.0).epsilon(1e-12));
  int set = 0;
  for (auto b : result.best_bits) set += b;
  CHECK(set == 1);
}

TEST_CASE("simulated annealing: deterministic per seed, threads irrelevant") {
  const auto q = test::random_qubo(24, 301);
  AnnealSchedule schedule;
  schedule.sweeps = 100;
  schedule.restarts = 6;
  schedule.seed = 77;
  const auto a = simulated_annealing(q, schedule, 1);
  const auto b = simulated_annealing(q, schedule, 4);
  CHECK(a.best_bits == b.best_bits);
  CHECK(a.best_energy == b.best_energy);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].bits == b.samples[i].bits);
    CHECK(a.samples[i].energy == b.samples[i].energy);
  }
}

TEST_CASE("solve results: best matches samples and re-evaluation") {
  const auto q = test::random_qubo(16, 302);
  AnnealSchedule schedule;
  schedule.sweeps = 300;
  schedule.restarts = 5;
  schedule.seed = 5;
  const auto result = simulated_annealing(q, schedule);
  double min_energy = result.samples[0].energy;
  for (const auto& s : result.samples) {
    min_energy = std::min(min_energy, s.energy);
    CHECK(s.energy == doctest::Approx(q.evaluate(s.bits)).epsilon(1e-10));
  }
  CHECK(result.best_energy == min_energy);
  CHECK(result.best_energy ==
        doctest::Approx(q.evaluate(result.best_bits)).epsilon(1e-10));
}

TEST_CASE("tabu search: trivial instances") {
  QuboBuilder builder(1);
  builder.add(0, 0, 3.0);
  const auto q = builder.build();
  const auto result = tabu_search(q, 50, 5, 1);
  CHECK(result.best_energy == 0.0);
  CHECK(result.best_bits == Bits{0});

  const std::vector<double> coeffs{0.5, 0.5};
  const auto penalty = equality_penalty(coeffs, 1.0);
  const auto both = tabu_search(penalty, 100, 2, 2);
  CHECK(both.best_energy == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(both.best_bits == Bits{1, 1});
}

TEST_CASE("tabu search: deterministic per seed") {
  const auto q = test::random_qubo(20, 303);
  const auto a = tabu_search(q, 500, 7, 99);
  const auto b = tabu_search(q, 500, 7, 99);
  CHECK(a.best_bits == b.best_bits);
  CHECK(a.best_energy == b.best_energy);
}

TEST_CASE("exhaustive: zero matrix and tie-break example") {
  const auto zero = QuboMatrix(3);
  const auto z = exhaustive(zero);
  CHECK(z.best_energy == 0.0);
  CHECK(z.best_bits == Bits(3, 0));

  QuboBuilder builder(2);
  builder.add(0, 0, -1.0).add(1, 1, -1.0).add(0, 1, 3.0);
  const auto result = exhaustive(builder.build());
  CHECK(result.best_energy == -1.0);
  CHECK(result.best_bits == Bits{1, 0});
}

TEST_CASE("exhaustive: matches the naive scan oracle") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto q = test::random_qubo(12, 400 + trial, 0.8);
    const auto fast = exhaustive(q);
    const auto slow = naive_minimum(q);
    CHECK(fast.best_energy == doctest::Approx(slow.energy).epsilon(1e-10));
    CHECK(fast.best_bits == slow.bits);
  }
}

TEST_CASE("exhaustive: size limit") {
  CHECK_THROWS_AS(exhaustive(QuboMatrix(25)), Error);
}

TEST_CASE("heuristics reach the exhaustive optimum on a small battery") {
  int sa_hits = 0, tabu_hits = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const auto q = test::random_qubo(14, 500 + trial);
    const auto truth = exhaustive(q);

    AnnealSchedule schedule;
    schedule.sweeps = 1000;
    schedule.restarts = 8;
    schedule.seed = std::uint64_t(trial);
    const auto sa = simulated_annealing(q, schedule);
    CHECK(sa.best_energy >= truth.best_energy - 1e-10);
    if (sa.best_energy <= truth.best_energy + 1e-9) ++sa_hits;

    const auto tabu = tabu_search(q, 3000, 10, std::uint64_t(trial));
    CHECK(tabu.best_energy >= truth.best_energy - 1e-10);
    if (tabu.best_energy <= truth.best_energy + 1e-9) ++tabu_hits;
  }
  CHECK(sa_hits >= trials - 1);
  CHECK(tabu_hits >= trials - 1);
}

TEST_CASE("suggest_beta_range is ordered and positive") {
  const auto q = test::random_qubo(10, 600);
  const auto [hot, cold] = suggest_beta_range(q);
  CHECK(hot > 0.0);
  CHECK(cold >= hot);

  const auto [h0, c0] = suggest_beta_range(QuboMatrix(4));
  CHECK(h0 == 1.0);
  CHECK(c0 == 1.0);
}

TEST_CASE("run_solver dispatch and config parsing defaults") {
  const auto q = test::random_qubo(10, 601);
  SolverConfig config;
  config.solver = SolverKind::exhaustive;
  const auto exact = run_solver(q, config);

  config.solver = SolverKind::sa;
  config.sweeps = 500;
  config.restarts = 4;
  config.seed = 11;
  const auto sa = run_solver(q, config);
  CHECK(sa.best_energy >= exact.best_energy - 1e-10);

  config.solver = SolverKind::tabu;
  config.iterations = 1000;
  config.tenure = 5;
  const auto tabu = run_solver(q, config);
  CHECK(tabu.best_energy >= exact.best_energy - 1e-10);
}

TEST_CASE("schedule validation") {
  AnnealSchedule schedule;
  schedule.beta_start = 2.0;
  schedule.beta_end = 1.0;
  CHECK_THROWS_AS(schedule.validate(), Error);
  schedule.beta_start = 0.0;
  CHECK_THROWS_AS(schedule.validate(), Error);
  schedule = {};
  schedule.sweeps = 0;
  CHECK_THROWS_AS(schedule.validate(), Error);
}
