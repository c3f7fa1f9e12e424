#include <doctest.h>

#include "core/classical.hpp"
#include "core/formulation.hpp"
#include "test_util.hpp"

using namespace msq;

namespace {

AssetStats diag_stats(const Eigen::VectorXd& mu, const Eigen::VectorXd& var) {
  AssetStats stats;
  const auto n = mu.size();
  stats.mu = mu;
  stats.cov = var.asDiagonal();
  stats.sigma = var.cwiseSqrt();
  stats.corr = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    char name[8];
    std::snprintf(name, sizeof name, "D%02d", int(i));
    stats.assets.push_back(name);
  }
  return stats;
}

// Uniform sample from the probability simplex (exponential spacings).
Eigen::VectorXd random_simplex(Eigen::Index n, SplitMix64& rng) {
  Eigen::VectorXd w(n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = -std::log(1.0 - rng.next_double());
    sum += w(i);
  }
  return w / sum;
}

}  // namespace

TEST_CASE("closed-form tangency: frozen two-asset example") {
  Eigen::VectorXd mu(2), var(2);
  mu << 0.1, 0.2;
  var << 0.04, 0.08;
  const auto stats = diag_stats(mu, var);
  const auto w = classical_max_sharpe(stats);
  CHECK(w(0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(w(1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sharpe_ratio(w, stats.mu, stats.cov) ==
        doctest::Approx(0.8660254037844386).epsilon(1e-9));
}

TEST_CASE("single asset returns the only feasible portfolio") {
  Eigen::VectorXd mu(1), var(1);
  mu << 0.1;
  var << 0.05;
  const auto w = classical_max_sharpe(diag_stats(mu, var));
  REQUIRE(w.size() == 1);
  CHECK(w(0) == 1.0);
}

TEST_CASE("diagonal covariance: w proportional to mu over variance") {
  SplitMix64 rng(900);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 3 + Eigen::Index(rng.next_below(6));
    Eigen::VectorXd mu(n), var(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      mu(i) = 0.05 + 0.25 * rng.next_double();
      var(i) = 0.01 + 0.2 * rng.next_double();
    }
    const auto stats = diag_stats(mu, var);

    Eigen::VectorXd expected = mu.cwiseQuotient(var);
    expected /= expected.sum();

    const auto w = classical_max_sharpe(stats);
    CHECK((w - expected).cwiseAbs().maxCoeff() < 1e-8);

    // The projected-gradient path must land on the same point.
    const auto pg =
        projected_gradient_min_variance(mu, stats.cov, 200000, 1e-12);
    REQUIRE(pg.converged);
    Eigen::VectorXd w_pg = pg.y / pg.y.sum();
    CHECK((w_pg - expected).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("projected gradient matches interior closed form on SPD instances") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto stats = test::interior_tangency_stats(5, 1000 + trial);
    const auto closed = tangency_closed_form(stats.mu, stats.cov);
    REQUIRE(closed.has_value());
    REQUIRE(closed->minCoeff() > 0.0);
    Eigen::VectorXd w_closed = *closed / closed->sum();

    const auto pg = projected_gradient_min_variance(stats.mu, stats.cov,
                                                    200000, 1e-12);
    REQUIRE(pg.converged);
    Eigen::VectorXd w_pg = pg.y / pg.y.sum();
    CHECK((w_pg - w_closed).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("baseline dominates random simplex portfolios") {
  SplitMix64 rng(901);
  for (int trial = 0; trial < 5; ++trial) {
    const auto stats = test::random_stats(6, 2000 + trial);
    const auto w = classical_max_sharpe(stats);
    CHECK(std::abs(w.sum() - 1.0) <= 1e-8);
    CHECK(w.minCoeff() >= -1e-10);
    const double best = sharpe_ratio(w, stats.mu, stats.cov);
    for (int draw = 0; draw < 1000; ++draw) {
      const Eigen::VectorXd candidate = random_simplex(6, rng);
      CHECK(best >= sharpe_ratio(candidate, stats.mu, stats.cov) - 1e-9);
    }
  }
}

TEST_CASE("dykstra projection lands in the feasible set") {
  SplitMix64 rng(902);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 2 + Eigen::Index(rng.next_below(8));
    Eigen::VectorXd mu(n), v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      mu(i) = 0.02 + rng.next_double();
      v(i) = 4.0 * rng.next_double() - 2.0;
    }
    const Eigen::VectorXd z = project_feasible(v, mu);
    CHECK(z.minCoeff() >= -1e-12);
    CHECK(std::abs(mu.dot(z) - 1.0) <= 1e-9);
    // Projection is idempotent.
    const Eigen::VectorXd again = project_feasible(z, mu);
    CHECK((again - z).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("non-convergence is reported with the last iterate") {
  const auto stats = test::random_stats(6, 903);
  // One iteration cannot reach a 1e-14 stopping threshold here.
  const auto pg =
      projected_gradient_min_variance(stats.mu, stats.cov, 1, 1e-14);
  CHECK(!pg.converged);
  CHECK(pg.y.size() == 6);
  CHECK(pg.iterations == 1);

  // classical_max_sharpe still succeeds on convex instances.
  const auto w = classical_max_sharpe(stats);
  CHECK(std::abs(w.sum() - 1.0) <= 1e-8);
}
