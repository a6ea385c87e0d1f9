#pragma once

#include <cstdint>
#include <random>

namespace satstream {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG wrapper. All sampling goes through these helpers so that
// results are byte-reproducible for a given seed independent of the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(splitmix64(seed)) {}

  std::uint64_t next() { return eng_(); }

  // Unbiased uniform draw from [0, n), n >= 1. Rejection on the top range.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return unit() < p;
  }

  // Independent child generator; distinct streams for distinct tags.
  Rng fork(std::uint64_t tag) {
    return Rng(splitmix64(eng_() ^ splitmix64(tag)));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace satstream
