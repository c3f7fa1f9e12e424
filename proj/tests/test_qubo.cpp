#include <doctest.h>

#include <vector>

#include "core/qubo.hpp"
#include "test_util.hpp"

using namespace msq;

namespace {

// Independent dense evaluation: x^T U x + offset with plain loops.
double dense_energy(const QuboMatrix& q, const Bits& x) {
  const std::size_t n = q.size();
  std::vector<std::vector<double>> U(n, std::vector<double>(n, 0.0));
  for (const auto& t : q.terms()) U[t.i][t.j] = t.value;
  double energy = q.offset();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      energy += U[i][j] * double(x[i]) * double(x[j]);
  return energy;
}

// Straight-line Ising energy over explicit spins.
double ising_energy(const IsingModel& m, const Bits& x) {
  std::vector<int> spins(m.n);
  for (std::uint32_t i = 0; i < m.n; ++i) spins[i] = x[i] ? 1 : -1;
  double energy = m.offset;
  for (std::uint32_t i = 0; i < m.n; ++i) energy += m.h[i] * spins[i];
  for (const auto& c : m.couplers) energy += c.value * spins[c.i] * spins[c.j];
  return energy;
}

}  // namespace

TEST_CASE("evaluate: hand expansion and zero case") {
  QuboBuilder builder(2);
  builder.add(0, 0, 1.0).add(0, 1, -2.0).add(1, 1, 1.0);
  const auto q = builder.build();
  CHECK(q.evaluate({1, 1}) == 0.0);
  CHECK(q.evaluate({0, 0}) == 0.0);  // offset only

  const auto r = test::random_qubo(5, 42);
  CHECK(r.evaluate(Bits(5, 0)) == r.offset());
}

TEST_CASE("evaluate: matches dense oracle on random instances") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = test::random_qubo(10, 1000 + trial, 0.7);
    const Bits x = test::random_bits(10, rng);
    CHECK(q.evaluate(x) == doctest::Approx(dense_energy(q, x)).epsilon(1e-12));
  }
}

TEST_CASE("evaluate: length mismatch") {
  const auto q = test::random_qubo(4, 3);
  CHECK_THROWS_AS((void)q.evaluate(Bits(3, 0)), Error);
}

TEST_CASE("builder: duplicate and transposed insertions merge") {
  QuboBuilder builder(3);
  builder.add(1, 0, 2.0);   // normalized to (0, 1)
  builder.add(0, 1, 3.0);   // sums to 5
  builder.add(2, 2, 1.0);
  builder.add(2, 2, -1.0);  // cancels to zero, pruned
  const auto q = builder.build();
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms()[0].i == 0);
  CHECK(q.terms()[0].j == 1);
  CHECK(q.terms()[0].value == 5.0);
}

TEST_CASE("ising_to_qubo: single bias hand check") {
  IsingModel m;
  m.n = 1;
  m.h = {1.0};
  const auto q = ising_to_qubo(m);
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms()[0].value == 2.0);
  CHECK(q.offset() == -1.0);
  CHECK(q.evaluate({0}) == -1.0);  // S=-1
  CHECK(q.evaluate({1}) == 1.0);   // S=+1
}

TEST_CASE("ising_to_qubo: zero model maps to zero") {
  IsingModel m;
  m.n = 3;
  m.h = {0.0, 0.0, 0.0};
  const auto q = ising_to_qubo(m);
  CHECK(q.terms().empty());
  CHECK(q.offset() == 0.0);
}

TEST_CASE("qubo_to_ising: inverse of the bias example") {
  QuboBuilder builder(1);
  builder.add(0, 0, 2.0).add_offset(-1.0);
  const auto m = qubo_to_ising(builder.build());
  CHECK(m.h[0] == 1.0);
  CHECK(m.offset == 0.0);
  CHECK(m.couplers.empty());
}

TEST_CASE("ising/qubo: energies agree over all assignments") {
  SplitMix64 rng(99);
  IsingModel m;
  m.n = 8;
  for (std::uint32_t i = 0; i < m.n; ++i)
    m.h.push_back(2.0 * rng.next_double() - 1.0);
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = i + 1; j < m.n; ++j)
      m.couplers.push_back({i, j, 2.0 * rng.next_double() - 1.0});
  m.offset = 0.25;

  const auto q = ising_to_qubo(m);
  for (std::uint64_t v = 0; v < 256; ++v) {
    const Bits x = test::bits_from_counter(v, 8);
    CHECK(q.evaluate(x) == doctest::Approx(ising_energy(m, x)).epsilon(1e-12));
  }
}

TEST_CASE("qubo -> ising -> qubo round trip preserves energies") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t n = 4 + std::uint32_t(trial % 9);  // up to 12
    const auto q = test::random_qubo(n, 500 + trial);
    const auto back = ising_to_qubo(qubo_to_ising(q));
    const std::uint64_t states = 1ULL << n;
    double max_dev = 0.0;
    for (std::uint64_t v = 0; v < states; ++v) {
      const Bits x = test::bits_from_counter(v, n);
      max_dev = std::max(max_dev, std::abs(q.evaluate(x) - back.evaluate(x)));
    }
    CHECK(max_dev <= 1e-12);
  }
}

TEST_CASE("add_scaled: identity, zero scale, linearity") {
  const auto q = test::random_qubo(6, 11);
  const auto h = test::random_qubo(6, 12);
  const QuboMatrix zero(6);

  const auto id = add_scaled(zero, 1.0, q);
  const auto noop = add_scaled(q, 0.0, h);
  SplitMix64 rng(13);
  for (int trial = 0; trial < 16; ++trial) {
    const Bits x = test::random_bits(6, rng);
    CHECK(id.evaluate(x) == doctest::Approx(q.evaluate(x)).epsilon(1e-12));
    CHECK(noop.evaluate(x) == doctest::Approx(q.evaluate(x)).epsilon(1e-12));
    const auto combined = add_scaled(q, 2.5, h);
    CHECK(combined.evaluate(x) ==
          doctest::Approx(q.evaluate(x) + 2.5 * h.evaluate(x)).epsilon(1e-12));
  }
}

TEST_CASE("add_scaled: associative and commutative at the energy level") {
  const auto a = test::random_qubo(5, 21);
  const auto b = test::random_qubo(5, 22);
  const auto c = test::random_qubo(5, 23);
  const auto left = add_scaled(add_scaled(a, 1.0, b), 1.0, c);
  const auto right = add_scaled(a, 1.0, add_scaled(b, 1.0, c));
  const auto swapped = add_scaled(add_scaled(b, 1.0, a), 1.0, c);
  for (std::uint64_t v = 0; v < 32; ++v) {
    const Bits x = test::bits_from_counter(v, 5);
    CHECK(left.evaluate(x) == doctest::Approx(right.evaluate(x)).epsilon(1e-12));
    CHECK(left.evaluate(x) ==
          doctest::Approx(swapped.evaluate(x)).epsilon(1e-12));
  }
}

TEST_CASE("add_scaled: dimension mismatch") {
  CHECK_THROWS_AS(add_scaled(QuboMatrix(3), 1.0, QuboMatrix(4)), Error);
}

TEST_CASE("equality_penalty: hand expansion") {
  const std::vector<double> coeffs{1.0, 1.0};
  const auto q = equality_penalty(coeffs, 1.0);
  REQUIRE(q.terms().size() == 3);
  CHECK(q.terms()[0].value == -1.0);  // (0,0)
  CHECK(q.terms()[1].value == 2.0);   // (0,1)
  CHECK(q.terms()[2].value == -1.0);  // (1,1)
  CHECK(q.offset() == 1.0);
  CHECK(q.evaluate({1, 0}) == 0.0);
  CHECK(q.evaluate({1, 1}) == 1.0);
  CHECK(q.evaluate({0, 0}) == 1.0);
}

TEST_CASE("equality_penalty: equals the squared violation, nonnegative") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.next_below(8);
    std::vector<double> coeffs(n);
    for (auto& c : coeffs) c = 2.0 * rng.next_double() - 0.5;
    const double target = 2.0 * rng.next_double();
    const auto q = equality_penalty(coeffs, target);
    const Bits x = test::random_bits(n, rng);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i]) dot += coeffs[i];
    const double expected = (dot - target) * (dot - target);
    CHECK(q.evaluate(x) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(q.evaluate(x) >= -1e-12);
  }
}

TEST_CASE("evaluate is linear in coefficients for fixed x") {
  // Scaling every coefficient (and offset) scales the energy.
  const auto q = test::random_qubo(7, 55);
  const auto doubled = add_scaled(q, 1.0, q);
  SplitMix64 rng(56);
  const Bits x = test::random_bits(7, rng);
  CHECK(doubled.evaluate(x) == doctest::Approx(2.0 * q.evaluate(x)));
}

TEST_CASE("bits_less follows counting order") {
  CHECK(bits_less({1, 0}, {0, 1}));   // 1 < 2
  CHECK(!bits_less({0, 1}, {1, 0}));
  CHECK(bits_less({0, 0}, {1, 0}));
  CHECK(!bits_less({1, 1}, {1, 1}));
  CHECK(bits_less({1, 1, 0}, {0, 0, 1}));  // 3 < 4
}
