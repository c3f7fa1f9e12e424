#include "core/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

#include "core/parallel.hpp"
#include "core/random.hpp"

namespace msq {

namespace {

// Symmetrized neighbor lists so a flip of p can read/update its couplings
// in one contiguous scan.
struct Adjacency {
  std::vector<double> diag;
  std::vector<std::size_t> offsets;  // n + 1
  std::vector<std::uint32_t> neighbor;
  std::vector<double> weight;

  static Adjacency build(const QuboMatrix& q) {
    const std::uint32_t n = q.size();
    Adjacency adj;
    adj.diag.assign(n, 0.0);
    std::vector<std::size_t> degree(n, 0);
    for (const auto& t : q.terms()) {
      if (t.i == t.j) {
        adj.diag[t.i] = t.value;
      } else {
        ++degree[t.i];
        ++degree[t.j];
      }
    }
    adj.offsets.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      adj.offsets[i + 1] = adj.offsets[i] + degree[i];
    adj.neighbor.resize(adj.offsets[n]);
    adj.weight.resize(adj.offsets[n]);
    std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& t : q.terms()) {
      if (t.i == t.j) continue;
      adj.neighbor[cursor[t.i]] = t.j;
      adj.weight[cursor[t.i]++] = t.value;
      adj.neighbor[cursor[t.j]] = t.i;
      adj.weight[cursor[t.j]++] = t.value;
    }
    return adj;
  }
};

// field[p] = Q_pp + sum_j Q~_pj x_j, so dE(flip p) = (1 - 2 x_p) field[p].
std::vector<double> compute_fields(const Adjacency& adj, const Bits& x) {
  const std::size_t n = adj.diag.size();
  std::vector<double> field(adj.diag);
  for (std::size_t p = 0; p < n; ++p) {
    double acc = 0.0;
    for (std::size_t e = adj.offsets[p]; e < adj.offsets[p + 1]; ++e)
      if (x[adj.neighbor[e]]) acc += adj.weight[e];
    field[p] += acc;
  }
  return field;
}

void apply_flip(const Adjacency& adj, Bits& x, std::vector<double>& field,
                std::size_t p) {
  const double sign = x[p] ? -1.0 : 1.0;
  x[p] ^= 1;
  for (std::size_t e = adj.offsets[p]; e < adj.offsets[p + 1]; ++e)
    field[adj.neighbor[e]] += sign * adj.weight[e];
}

Bits random_bits(std::size_t n, SplitMix64& rng) {
  Bits x(n);
  for (auto& b : x) b = std::uint8_t(rng.next() & 1u);
  return x;
}

}  // namespace

void AnnealSchedule::validate() const {
  if (sweeps < 1 || restarts < 1)
    throw Error(ErrorCode::invalid_argument,
                "sweeps and restarts must be >= 1");
  if (!(beta_start > 0.0) || !(beta_start <= beta_end))
    throw Error(ErrorCode::invalid_argument,
                "need 0 < beta_start <= beta_end");
}

std::pair<double, double> suggest_beta_range(const QuboMatrix& q) {
  const std::uint32_t n = q.size();
  std::vector<double> scale(n, 0.0);
  for (const auto& t : q.terms()) {
    scale[t.i] += std::abs(t.value);
    if (t.i != t.j) scale[t.j] += std::abs(t.value);
  }
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (double s : scale) {
    largest = std::max(largest, s);
    if (s > 0.0) smallest = std::min(smallest, s);
  }
  if (largest <= 0.0) return {1.0, 1.0};
  const double hot = std::log(2.0) / largest;
  const double cold = std::log(100.0) / smallest;
  return {hot, std::max(cold, hot)};
}

SolveResult simulated_annealing(const QuboMatrix& q,
                                const AnnealSchedule& schedule, int threads) {
  schedule.validate();
  if (q.size() == 0)
    throw Error(ErrorCode::invalid_argument, "empty problem");
  const auto start_time = std::chrono::steady_clock::now();
  const Adjacency adj = Adjacency::build(q);
  const std::uint32_t n = q.size();

  SolveResult result;
  result.samples.resize(std::size_t(schedule.restarts));

  parallel_for(std::size_t(schedule.restarts), threads, [&](std::size_t r) {
    SplitMix64 rng(mix_seed(schedule.seed, r));
    Bits x = random_bits(n, rng);
    std::vector<double> field = compute_fields(adj, x);
    double energy = q.evaluate(x);
    Bits best = x;
    double best_energy = energy;

    const double ratio = schedule.beta_end / schedule.beta_start;
    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
      const double frac =
          schedule.sweeps > 1 ? double(sweep) / double(schedule.sweeps - 1) : 1.0;
      const double beta = schedule.beta_start * std::pow(ratio, frac);
      for (std::uint32_t p = 0; p < n; ++p) {
        const double dE = (x[p] ? -1.0 : 1.0) * field[p];
        if (dE <= 0.0 || rng.next_double() < std::exp(-beta * dE)) {
          apply_flip(adj, x, field, p);
          energy += dE;
          if (energy < best_energy) {
            best_energy = energy;
            best = x;
          }
        }
      }
    }
    // Re-evaluate from scratch so reported energies carry no incremental
    // drift.
    result.samples[r] = {best, q.evaluate(best)};
  });

  result.best_bits = result.samples[0].bits;
  result.best_energy = result.samples[0].energy;
  for (const auto& s : result.samples) {
    if (s.energy < result.best_energy ||
        (s.energy == result.best_energy && bits_less(s.bits, result.best_bits))) {
      result.best_bits = s.bits;
      result.best_energy = s.energy;
    }
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
          .count();
  return result;
}

SolveResult tabu_search(const QuboMatrix& q, int iterations, int tenure,
                        std::uint64_t seed) {
  if (q.size() == 0)
    throw Error(ErrorCode::invalid_argument, "empty problem");
  if (iterations < 1 || tenure < 1)
    throw Error(ErrorCode::invalid_argument,
                "iterations and tenure must be >= 1");
  const auto start_time = std::chrono::steady_clock::now();
  const Adjacency adj = Adjacency::build(q);
  const std::uint32_t n = q.size();

  SplitMix64 rng(mix_seed(seed, 0x7461627553ULL));
  Bits x = random_bits(n, rng);
  std::vector<double> field = compute_fields(adj, x);
  double energy = q.evaluate(x);
  Bits best = x;
  double best_energy = energy;
  std::vector<std::int64_t> tabu_until(n, -1);

  for (int iter = 0; iter < iterations; ++iter) {
    std::int64_t chosen = -1;
    double chosen_dE = std::numeric_limits<double>::infinity();
    for (std::uint32_t p = 0; p < n; ++p) {
      const double dE = (x[p] ? -1.0 : 1.0) * field[p];
      const bool tabu = tabu_until[p] > iter;
      const bool aspiration = energy + dE < best_energy;
      if (tabu && !aspiration) continue;
      if (dE < chosen_dE) {
        chosen_dE = dE;
        chosen = p;
      }
    }
    if (chosen < 0) {
      // Everything tabu and nothing aspirating; take the least-bad move.
      for (std::uint32_t p = 0; p < n; ++p) {
        const double dE = (x[p] ? -1.0 : 1.0) * field[p];
        if (dE < chosen_dE) {
          chosen_dE = dE;
          chosen = p;
        }
      }
    }
    apply_flip(adj, x, field, std::size_t(chosen));
    energy += chosen_dE;
    tabu_until[chosen] = iter + tenure;
    if (energy < best_energy) {
      best_energy = energy;
      best = x;
    }
  }

  SolveResult result;
  result.best_bits = best;
  result.best_energy = q.evaluate(best);
  result.samples = {{result.best_bits, result.best_energy}};
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
          .count();
  return result;
}

SolveResult exhaustive(const QuboMatrix& q) {
  const std::uint32_t n = q.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "empty problem");
  if (n > 24)
    throw Error(ErrorCode::problem_too_large,
                "exhaustive enumeration limited to 24 variables");
  const auto start_time = std::chrono::steady_clock::now();
  const Adjacency adj = Adjacency::build(q);

  Bits x(n, 0);
  std::vector<double> field(adj.diag);
  double energy = q.offset();
  Bits best = x;
  double best_energy = energy;

  const std::uint64_t states = 1ULL << n;
  for (std::uint64_t m = 1; m < states; ++m) {
    const auto p = std::size_t(std::countr_zero(m));  // Gray-code flip
    const double dE = (x[p] ? -1.0 : 1.0) * field[p];
    apply_flip(adj, x, field, p);
    energy += dE;
    // Near-ties are re-evaluated exactly before comparing, so incremental
    // drift cannot affect either the minimum or the tie-break.
    const double margin = 1e-9 * std::max(1.0, std::abs(best_energy));
    if (energy < best_energy + margin) {
      const double exact = q.evaluate(x);
      if (exact < best_energy ||
          (exact == best_energy && bits_less(x, best))) {
        best_energy = exact;
        best = x;
      }
    }
  }

  SolveResult result;
  result.best_bits = best;
  result.best_energy = best_energy;
  result.samples = {{best, best_energy}};
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
          .count();
  return result;
}

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::sa: return "sa";
    case SolverKind::tabu: return "tabu";
    case SolverKind::exhaustive: return "exhaustive";
  }
  return "?";
}

SolverKind solver_kind_from_string(const std::string& name) {
  if (name == "sa") return SolverKind::sa;
  if (name == "tabu") return SolverKind::tabu;
  if (name == "exhaustive") return SolverKind::exhaustive;
  throw Error(ErrorCode::invalid_argument, "unknown solver: " + name);
}

SolveResult run_solver(const QuboMatrix& q, const SolverConfig& config,
                       int threads) {
  switch (config.solver) {
    case SolverKind::sa: {
      AnnealSchedule schedule;
      schedule.sweeps = config.sweeps;
      schedule.restarts = config.restarts;
      schedule.seed = config.seed;
      if (config.beta_start && config.beta_end) {
        schedule.beta_start = *config.beta_start;
        schedule.beta_end = *config.beta_end;
      } else {
        const auto [hot, cold] = suggest_beta_range(q);
        schedule.beta_start = config.beta_start.value_or(hot);
        schedule.beta_end = config.beta_end.value_or(cold);
        if (schedule.beta_start > schedule.beta_end)
          schedule.beta_end = schedule.beta_start;
      }
      return simulated_annealing(q, schedule, threads);
    }
    case SolverKind::tabu:
      return tabu_search(q, config.iterations, config.tenure, config.seed);
    case SolverKind::exhaustive:
      return exhaustive(q);
  }
  throw Error(ErrorCode::internal, "unreachable");
}

}  // namespace msq
