#pragma once

#include <cstdint>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"

namespace satstream {

// Injective rank for clauses of size <= beta over the 2n literal codes,
// ordered first by clause size and then lexicographically by the sorted code
// sequence. The universe is all code subsets, so the rank space matches
// N = sum_{i=1..beta} C(2n, i); every normalized clause round-trips through
// encode/decode. Indices are kept below 2^60 so they can live in a prime
// field for sketching.
class ClauseCodec {
 public:
  static constexpr std::uint64_t kCap = 1ULL << 60;

  ClauseCodec(int n, int beta)
      : universe_(2 * n), beta_(std::min<int>(beta, universe_)) {
    if (n < 1) throw ConfigError("codec requires n >= 1");
    if (beta < 1) throw ConfigError("codec requires beta >= 1");
    build_binomials();
    size_by_len_.assign(static_cast<std::size_t>(beta_) + 1, 0);
    for (int k = 1; k <= beta_; ++k)
      size_by_len_[k] = sat_add(size_by_len_[k - 1], binom(universe_, k));
    if (size_by_len_[beta_] >= kCap)
      throw ConfigError("clause universe exceeds 2^60; lower beta or n");
  }

  std::uint64_t universe_size() const {
    return size_by_len_[static_cast<std::size_t>(beta_)];
  }

  int beta() const { return beta_; }

  std::uint64_t encode(const Clause& c) const {
    const int k = static_cast<int>(c.size());
    if (k > beta_) throw ClauseTooLarge(c.size(), static_cast<std::size_t>(beta_));
    std::uint64_t rank = size_by_len_[k - 1];
    int prev = -1;
    for (int j = 0; j < k; ++j) {
      const int code = literal_code(c.lits[j]);
      if (code >= universe_)
        throw IndexOutOfRange("literal variable outside the codec's n");
      for (int v = prev + 1; v < code; ++v)
        rank += binom(universe_ - 1 - v, k - 1 - j);
      prev = code;
    }
    return rank;
  }

  Clause decode(std::uint64_t idx, ClauseKind kind = ClauseKind::disjunctive) const {
    if (idx >= universe_size())
      throw IndexOutOfRange("clause index " + std::to_string(idx) +
                            " outside [0, " + std::to_string(universe_size()) +
                            ")");
    int k = 1;
    while (idx >= size_by_len_[k]) ++k;
    idx -= size_by_len_[k - 1];

    Clause c;
    c.kind = kind;
    c.lits.reserve(static_cast<std::size_t>(k));
    int prev = -1;
    for (int j = 0; j < k; ++j) {
      for (int v = prev + 1; v < universe_; ++v) {
        const std::uint64_t below = binom(universe_ - 1 - v, k - 1 - j);
        if (idx < below) {
          c.lits.push_back(literal_from_code(v));
          prev = v;
          break;
        }
        idx -= below;
      }
    }
    return c;
  }

 private:
  static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return (s < a || s >= kCap) ? kCap : s;
  }

  void build_binomials() {
    binom_.assign(static_cast<std::size_t>(universe_) + 1,
                  std::vector<std::uint64_t>(static_cast<std::size_t>(beta_) + 1, 0));
    for (int a = 0; a <= universe_; ++a) {
      binom_[a][0] = 1;
      for (int b = 1; b <= std::min(a, beta_); ++b) {
        binom_[a][b] = (b == a) ? 1
                                : sat_add(binom_[a - 1][b - 1], binom_[a - 1][b]);
      }
    }
  }

  std::uint64_t binom(int a, int b) const {
    if (b < 0 || b > a) return 0;
    if (b > beta_) return kCap;
    return binom_[a][b];
  }

  int universe_;
  int beta_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::uint64_t> size_by_len_;
};

inline std::uint64_t clause_universe_size(int n, int beta) {
  return ClauseCodec(n, beta).universe_size();
}

inline std::uint64_t clause_index(const Clause& c, int n, int beta) {
  return ClauseCodec(n, beta).encode(c);
}

inline Clause clause_decode(std::uint64_t idx, int n, int beta,
                            ClauseKind kind = ClauseKind::disjunctive) {
  return ClauseCodec(n, beta).decode(idx, kind);
}

}  // namespace satstream
