#pragma once

#include <cstdint>
#include <cstring>

namespace msq {

// SplitMix64. Used both as a small standalone generator and to derive
// independent substream seeds, so that run r of pair p can be seeded by
// mix_seed(seed, p, r) with no correlation between streams.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Modulo bias is < 2^-40 for the n used here (variable counts).
    return next() % n;
  }
};

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return g.next();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a) {
  return hash_combine(seed, a);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b) {
  return hash_combine(hash_combine(seed, a), b);
}

inline std::uint64_t bits_of(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

}  // namespace msq
