#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/qubo.hpp"

namespace msq {

struct AnnealSchedule {
  int sweeps = 2000;
  double beta_start = 0.1;
  double beta_end = 10.0;
  int restarts = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Sample {
  Bits bits;
  double energy = 0.0;
};

struct SolveResult {
  Bits best_bits;
  double best_energy = 0.0;
  std::vector<Sample> samples;  // one per restart
  double wall_seconds = 0.0;
};

// Inverse-temperature range derived from the per-variable energy scales of
// Q, in the spirit of common annealer defaults: hot enough that the largest
// single-flip move is accepted with probability 1/2, cold enough that the
// smallest is accepted with probability 1/100.
std::pair<double, double> suggest_beta_range(const QuboMatrix& q);

// Single-bit-flip Metropolis with a geometric beta schedule and independent
// seeded restarts. Deterministic for a fixed seed, regardless of threads.
SolveResult simulated_annealing(const QuboMatrix& q,
                                const AnnealSchedule& schedule,
                                int threads = 1);

// Steepest-descent single-flip search with a recency tabu list; a tabu move
// is allowed when it improves the incumbent (aspiration).
SolveResult tabu_search(const QuboMatrix& q, int iterations, int tenure,
                        std::uint64_t seed);

// Exact minimum by Gray-code enumeration; n <= 24. Ties resolved toward the
// bitstring that comes first in counting order.
SolveResult exhaustive(const QuboMatrix& q);

enum class SolverKind { sa, tabu, exhaustive };

const char* to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);

// Mirrors the JSON config block {solver, sweeps, beta_start, beta_end,
// restarts, iterations, tenure, seed}. Unset betas are derived from Q.
struct SolverConfig {
  SolverKind solver = SolverKind::sa;
  int sweeps = 2000;
  std::optional<double> beta_start;
  std::optional<double> beta_end;
  int restarts = 10;
  int iterations = 5000;
  int tenure = 10;
  std::uint64_t seed = 0;

  SolverConfig with_seed(std::uint64_t s) const {
    SolverConfig c = *this;
    c.seed = s;
    return c;
  }
};

SolveResult run_solver(const QuboMatrix& q, const SolverConfig& config,
                       int threads = 1);

}  // namespace msq
