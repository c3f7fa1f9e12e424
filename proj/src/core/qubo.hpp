#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace msq {

using Bits = std::vector<std::uint8_t>;  // values 0/1

// Orders bitstrings by their value as an integer with bit 0 least
// significant, i.e. the order in which plain counting enumerates them.
// Used as the tie-break everywhere a solver has to pick among equal-energy
// states.
bool bits_less(const Bits& a, const Bits& b);

struct QuboTerm {
  std::uint32_t i = 0;
  std::uint32_t j = 0;  // i <= j; i == j is a linear (diagonal) term
  double value = 0.0;
};

// Upper-triangular sparse QUBO: energy(x) = sum_{i<=j} Q_ij x_i x_j + offset.
// Terms are kept sorted by (i, j), duplicates merged and zeros pruned.
class QuboMatrix {
 public:
  QuboMatrix() = default;
  explicit QuboMatrix(std::uint32_t n, double offset = 0.0)
      : n_(n), offset_(offset) {}

  // Takes terms already sorted by (i, j) with unique pairs; verifies order
  // and drops zeros.
  static QuboMatrix from_sorted_terms(std::uint32_t n,
                                      std::vector<QuboTerm> terms,
                                      double offset);

  std::uint32_t size() const { return n_; }
  double offset() const { return offset_; }
  const std::vector<QuboTerm>& terms() const { return terms_; }

  double evaluate(const Bits& x) const;

 private:
  friend class QuboBuilder;
  std::uint32_t n_ = 0;
  double offset_ = 0.0;
  std::vector<QuboTerm> terms_;
};

// Accumulates coefficients in any order; (j, i) with j > i is normalized to
// (i, j) and duplicate insertions sum.
class QuboBuilder {
 public:
  explicit QuboBuilder(std::uint32_t n) : n_(n) {}

  QuboBuilder& add(std::uint32_t i, std::uint32_t j, double value);
  QuboBuilder& add_offset(double value) {
    offset_ += value;
    return *this;
  }

  QuboMatrix build() const;

 private:
  std::uint32_t n_;
  double offset_ = 0.0;
  std::vector<QuboTerm> pending_;
};

// Ising model: energy(S) = sum_i h_i S_i + sum_{i<j} J_ij S_i S_j + offset,
// spins in {-1, +1}.
struct IsingModel {
  std::uint32_t n = 0;
  std::vector<double> h;
  std::vector<QuboTerm> couplers;  // strictly upper triangular (i < j)
  double offset = 0.0;

  double evaluate(std::span<const int> spins) const;
};

// Change of variables x = (S + 1) / 2; energies match exactly on every
// assignment, constants absorbed into the offset.
QuboMatrix ising_to_qubo(const IsingModel& model);

// Inverse map S = 2x - 1.
IsingModel qubo_to_ising(const QuboMatrix& q);

// energy(result) = energy(accumulator) + lambda * energy(term) pointwise.
QuboMatrix add_scaled(const QuboMatrix& accumulator, double lambda,
                      const QuboMatrix& term);

// QUBO whose energy is (coeffs . x - target)^2; squares fold onto the
// diagonal since x_i^2 = x_i.
QuboMatrix equality_penalty(std::span<const double> coeffs, double target);

}  // namespace msq
