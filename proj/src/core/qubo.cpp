#include "core/qubo.hpp"

#include <algorithm>
#include <unordered_map>

namespace msq {

bool bits_less(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

QuboMatrix QuboMatrix::from_sorted_terms(std::uint32_t n,
                                         std::vector<QuboTerm> terms,
                                         double offset) {
  QuboMatrix q(n, offset);
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    if (t.i > t.j || t.j >= n)
      throw Error(ErrorCode::invalid_argument, "term index out of range");
    if (k > 0) {
      const auto& p = terms[k - 1];
      if (t.i < p.i || (t.i == p.i && t.j <= p.j))
        throw Error(ErrorCode::invalid_argument, "terms not sorted");
    }
    if (t.value != 0.0) terms[out++] = t;
  }
  terms.resize(out);
  q.terms_ = std::move(terms);
  return q;
}

double QuboMatrix::evaluate(const Bits& x) const {
  if (x.size() != n_)
    throw Error(ErrorCode::invalid_argument, "bitstring length mismatch");
  double energy = offset_;
  for (const auto& t : terms_) {
    if (x[t.i] && x[t.j]) energy += t.value;
  }
  return energy;
}

QuboBuilder& QuboBuilder::add(std::uint32_t i, std::uint32_t j, double value) {
  if (i > j) std::swap(i, j);
  if (j >= n_)
    throw Error(ErrorCode::invalid_argument, "term index out of range");
  pending_.push_back({i, j, value});
  return *this;
}

QuboMatrix QuboBuilder::build() const {
  std::unordered_map<std::uint64_t, double> acc;
  acc.reserve(pending_.size());
  for (const auto& t : pending_)
    acc[(std::uint64_t(t.i) << 32) | t.j] += t.value;

  std::vector<QuboTerm> terms;
  terms.reserve(acc.size());
  for (const auto& [key, value] : acc) {
    if (value != 0.0)
      terms.push_back(
          {std::uint32_t(key >> 32), std::uint32_t(key & 0xffffffffULL), value});
  }
  std::sort(terms.begin(), terms.end(), [](const QuboTerm& a, const QuboTerm& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  QuboMatrix q(n_, offset_);
  q.terms_ = std::move(terms);
  return q;
}

double IsingModel::evaluate(std::span<const int> spins) const {
  if (spins.size() != n)
    throw Error(ErrorCode::invalid_argument, "spin vector length mismatch");
  double energy = offset;
  for (std::uint32_t i = 0; i < n; ++i) energy += h[i] * spins[i];
  for (const auto& c : couplers) energy += c.value * spins[c.i] * spins[c.j];
  return energy;
}

QuboMatrix ising_to_qubo(const IsingModel& model) {
  // S_i = 2 x_i - 1:
  //   h_i S_i            -> 2 h_i x_i - h_i
  //   J_ij S_i S_j       -> 4 J_ij x_i x_j - 2 J_ij x_i - 2 J_ij x_j + J_ij
  QuboBuilder builder(model.n);
  double offset = model.offset;
  for (std::uint32_t i = 0; i < model.n; ++i) {
    builder.add(i, i, 2.0 * model.h[i]);
    offset -= model.h[i];
  }
  for (const auto& c : model.couplers) {
    builder.add(c.i, c.j, 4.0 * c.value);
    builder.add(c.i, c.i, -2.0 * c.value);
    builder.add(c.j, c.j, -2.0 * c.value);
    offset += c.value;
  }
  builder.add_offset(offset);
  return builder.build();
}

IsingModel qubo_to_ising(const QuboMatrix& q) {
  // x_i = (S_i + 1) / 2:
  //   Q_ii x_i      -> Q_ii/2 S_i + Q_ii/2
  //   Q_ij x_i x_j  -> Q_ij/4 (S_i S_j + S_i + S_j + 1)
  IsingModel model;
  model.n = q.size();
  model.h.assign(model.n, 0.0);
  model.offset = q.offset();
  for (const auto& t : q.terms()) {
    if (t.i == t.j) {
      model.h[t.i] += t.value / 2.0;
      model.offset += t.value / 2.0;
    } else {
      model.couplers.push_back({t.i, t.j, t.value / 4.0});
      model.h[t.i] += t.value / 4.0;
      model.h[t.j] += t.value / 4.0;
      model.offset += t.value / 4.0;
    }
  }
  return model;
}

QuboMatrix add_scaled(const QuboMatrix& accumulator, double lambda,
                      const QuboMatrix& term) {
  if (accumulator.size() != term.size())
    throw Error(ErrorCode::invalid_argument, "QUBO size mismatch");
  const auto& a = accumulator.terms();
  const auto& b = term.terms();
  std::vector<QuboTerm> merged;
  merged.reserve(a.size() + b.size());
  std::size_t ia = 0, ib = 0;
  auto key = [](const QuboTerm& t) {
    return (std::uint64_t(t.i) << 32) | t.j;
  };
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || (ia < a.size() && key(a[ia]) < key(b[ib]))) {
      merged.push_back(a[ia++]);
    } else if (ia == a.size() || key(b[ib]) < key(a[ia])) {
      merged.push_back({b[ib].i, b[ib].j, lambda * b[ib].value});
      ++ib;
    } else {
      merged.push_back({a[ia].i, a[ia].j, a[ia].value + lambda * b[ib].value});
      ++ia;
      ++ib;
    }
  }
  std::erase_if(merged, [](const QuboTerm& t) { return t.value == 0.0; });
  return QuboMatrix::from_sorted_terms(accumulator.size(), std::move(merged),
                                       accumulator.offset() +
                                           lambda * term.offset());
}

QuboMatrix equality_penalty(std::span<const double> coeffs, double target) {
  // (c.x - t)^2 = sum_i (c_i^2 - 2 t c_i) x_i + sum_{i<j} 2 c_i c_j x_i x_j + t^2
  const auto n = std::uint32_t(coeffs.size());
  std::vector<QuboTerm> terms;
  terms.reserve(std::size_t(n) * (n + 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    terms.push_back({i, i, coeffs[i] * coeffs[i] - 2.0 * target * coeffs[i]});
    for (std::uint32_t j = i + 1; j < n; ++j)
      terms.push_back({i, j, 2.0 * coeffs[i] * coeffs[j]});
  }
  return QuboMatrix::from_sorted_terms(n, std::move(terms), target * target);
}

}  // namespace msq
