#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "satstream/errors.hpp"
#include "satstream/rng.hpp"

namespace satstream {

// Arithmetic in GF(p) for the Mersenne prime p = 2^61 - 1.
namespace mersenne61 {
constexpr std::uint64_t p = (1ULL << 61) - 1;

inline std::uint64_t reduce(std::uint64_t x) {
  x = (x & p) + (x >> 61);
  return x >= p ? x - p : x;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 w = static_cast<unsigned __int128>(a) * b;
  return reduce(static_cast<std::uint64_t>(w & p) +
                static_cast<std::uint64_t>(w >> 61));
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + p - b;
}
}  // namespace mersenne61

// L0 sampler for a turnstile stream over the universe [0, N): returns a
// member of the final nonzero support roughly uniformly at random. Geometric
// subsampling levels driven by one polynomial hash per repetition; each level
// keeps a single 1-sparse recovery cell (count, sum idx*w, sum idx^2*w, both
// mod p). With 0/1 frequencies the recovery check is sound: a cell passes it
// only when the level really holds a single live element.
class L0Sampler {
 public:
  L0Sampler(std::uint64_t universe, double delta, std::uint64_t seed)
      : universe_(universe), delta_(delta) {
    if (universe_ == 0) throw ConfigError("empty L0 universe");
    if (universe_ >= mersenne61::p)
      throw ConfigError("L0 universe must be below 2^61 - 1");
    if (!(delta > 0.0) || delta >= 1.0)
      throw ConfigError("delta must lie in (0, 1)");
    levels_ = 1;
    while ((1ULL << levels_) < universe_ && levels_ < 62) ++levels_;
    ++levels_;  // level 0 holds everything
    reps_ = std::max<int>(1, static_cast<int>(std::ceil(std::log2(1.0 / delta))));
    Rng rng(seed);
    coeff_a_.reserve(static_cast<std::size_t>(reps_));
    coeff_b_.reserve(static_cast<std::size_t>(reps_));
    for (int r = 0; r < reps_; ++r) {
      coeff_a_.push_back(1 + rng.below(mersenne61::p - 1));
      coeff_b_.push_back(rng.below(mersenne61::p));
    }
    cells_.assign(static_cast<std::size_t>(reps_) * levels_, Cell{});
  }

  void update(std::uint64_t idx, int delta) {
    if (idx >= universe_)
      throw IndexOutOfRange("L0 update index " + std::to_string(idx) +
                            " outside universe");
    const std::uint64_t sq = mersenne61::mul(idx, idx);
    for (int r = 0; r < reps_; ++r) {
      const int top = level_of(r, idx);
      for (int l = 0; l <= top; ++l) {
        Cell& c = cell(r, l);
        c.count += delta;
        if (delta > 0) {
          c.sum = mersenne61::add(c.sum, idx);
          c.sumsq = mersenne61::add(c.sumsq, sq);
        } else {
          c.sum = mersenne61::sub(c.sum, idx);
          c.sumsq = mersenne61::sub(c.sumsq, sq);
        }
      }
    }
  }

  // A support element, or absent when the support is empty or no level of
  // any repetition isolates a single element (probability <= delta).
  std::optional<std::uint64_t> extract() const {
    for (int r = 0; r < reps_; ++r) {
      for (int l = 0; l < levels_; ++l) {
        const Cell& c = cell(r, l);
        if (c.count != 1) continue;
        const std::uint64_t cand = c.sum;
        if (cand < universe_ && c.sumsq == mersenne61::mul(cand, cand))
          return cand;
      }
    }
    return std::nullopt;
  }

  bool definitely_empty() const {
    for (const Cell& c : cells_)
      if (c.count != 0 || c.sum != 0 || c.sumsq != 0) return false;
    return true;
  }

  // Storage in machine words: recovery cells plus hash coefficients.
  std::size_t words() const {
    return cells_.size() * 3 + static_cast<std::size_t>(reps_) * 2;
  }

  int levels() const { return levels_; }
  int repetitions() const { return reps_; }
  double delta() const { return delta_; }

 private:
  struct Cell {
    long long count = 0;
    std::uint64_t sum = 0;
    std::uint64_t sumsq = 0;
  };

  Cell& cell(int r, int l) {
    return cells_[static_cast<std::size_t>(r) * levels_ + l];
  }
  const Cell& cell(int r, int l) const {
    return cells_[static_cast<std::size_t>(r) * levels_ + l];
  }

  // Deepest level whose subsample admits idx: trailing zeros of the hash,
  // giving nested level sets with geometric survival.
  int level_of(int r, std::uint64_t idx) const {
    const std::uint64_t h =
        mersenne61::add(mersenne61::mul(coeff_a_[static_cast<std::size_t>(r)], idx),
                        coeff_b_[static_cast<std::size_t>(r)]);
    if (h == 0) return levels_ - 1;
    int tz = 0;
    std::uint64_t v = h;
    while ((v & 1) == 0 && tz < levels_ - 1) {
      v >>= 1;
      ++tz;
    }
    return tz;
  }

  std::uint64_t universe_;
  double delta_;
  int levels_ = 0;
  int reps_ = 0;
  std::vector<std::uint64_t> coeff_a_;
  std::vector<std::uint64_t> coeff_b_;
  std::vector<Cell> cells_;
};

struct L0SampleSet {
  std::vector<std::uint64_t> indices;  // distinct, sorted
  std::size_t requested = 0;
  std::size_t achieved = 0;
  std::size_t words = 0;
};

// Without-replacement sampling from a turnstile stream: s independent
// samplers with derived seeds, extracted at stream end and deduplicated.
class L0SampleBank {
 public:
  L0SampleBank(std::uint64_t universe, std::size_t s, double delta,
               std::uint64_t seed) {
    samplers_.reserve(s);
    for (std::size_t i = 0; i < s; ++i)
      samplers_.emplace_back(universe, delta,
                             splitmix64(seed ^ splitmix64(i + 1)));
  }

  void update(std::uint64_t idx, int delta) {
    for (L0Sampler& s : samplers_) s.update(idx, delta);
  }

  L0SampleSet extract() const {
    std::set<std::uint64_t> distinct;
    for (const L0Sampler& s : samplers_) {
      if (auto idx = s.extract()) distinct.insert(*idx);
    }
    L0SampleSet out;
    out.indices.assign(distinct.begin(), distinct.end());
    out.requested = samplers_.size();
    out.achieved = out.indices.size();
    out.words = words();
    return out;
  }

  std::size_t words() const {
    std::size_t w = 0;
    for (const L0Sampler& s : samplers_) w += s.words();
    return w;
  }

  std::size_t size() const { return samplers_.size(); }

 private:
  std::vector<L0Sampler> samplers_;
};

}  // namespace satstream
