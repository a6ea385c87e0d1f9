#pragma once

#include <bitset>
#include <cmath>
#include <cstdint>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"
#include "satstream/exact_solver.hpp"
#include "satstream/rng.hpp"

namespace satstream {

// Alice's bit string plus Bob's index (scalar, k-tuple, or pair depending on
// the reduction).
struct IndexInstance {
  std::vector<std::uint8_t> bits;
  std::vector<long> index;  // 1-based coordinates
};

struct HardnessConfig {
  int n = 0;
  int k = 1;       // k-SAT reduction
  long m = 0;      // Max-AND reduction
  long T = 1;      // AND-system width, K log m
  std::uint64_t seed = 0;

  void validate_ksat() const {
    if (k < 1 || n < 1) throw ConfigError("need n >= 1 and k >= 1");
    if (n % k != 0) throw ConfigError("n must be divisible by k");
    if (static_cast<double>(k) > static_cast<double>(n) / std::exp(1.0))
      throw ConfigError("the reduction requires k <= n/e");
  }
};

// The 2^k clauses over x_1..x_k that cannot all be satisfied: for each
// S subseteq [k], the clause negating exactly the variables in S. Any
// assignment falsifies exactly the clause whose S matches its true-set.
inline std::vector<Clause> gen_sk(int k) {
  if (k < 1 || k > 20) throw KTooLarge(k);
  std::vector<Clause> out;
  out.reserve(1ULL << k);
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    Clause c;
    c.kind = ClauseKind::disjunctive;
    for (int v = 1; v <= k; ++v)
      c.lits.push_back(Literal{v, (mask >> (v - 1) & 1) != 0});
    out.push_back(std::move(c));
  }
  return out;
}

namespace detail {
inline long flatten_tuple(const std::vector<long>& coords, long base) {
  long idx = 0;
  for (long c : coords) idx = idx * base + (c - 1);
  return idx;
}
}  // namespace detail

// Theorem-2 reduction: variables x_{a,b} for block a in [k], position b in
// [n/k]. Alice emits the positive clause of every tuple j with A_j = 1; Bob
// emits the S_k pattern over his tuple minus the all-positive clause. The
// whole set is satisfiable iff A_i = 0.
inline std::vector<Clause> gen_ksat_index(const IndexInstance& inst,
                                          const HardnessConfig& cfg) {
  cfg.validate_ksat();
  const long block = cfg.n / cfg.k;
  long universe = 1;
  for (int a = 0; a < cfg.k; ++a) universe *= block;
  if (static_cast<long>(inst.bits.size()) != universe)
    throw DimensionMismatch("bit string must have (n/k)^k entries");
  if (static_cast<long>(inst.index.size()) != cfg.k)
    throw DimensionMismatch("index must be a k-tuple");
  for (long c : inst.index)
    if (c < 1 || c > block) throw DimensionMismatch("index coordinate range");

  auto var_of = [block](int a, long b) {
    return static_cast<int>((a - 1) * block + b);
  };

  std::vector<Clause> out;
  std::vector<long> coords(static_cast<std::size_t>(cfg.k), 1);
  for (long j = 0; j < universe; ++j) {
    if (inst.bits[static_cast<std::size_t>(j)]) {
      Clause c;
      c.kind = ClauseKind::disjunctive;
      for (int a = 1; a <= cfg.k; ++a)
        c.lits.push_back(Literal{var_of(a, coords[a - 1]), false});
      out.push_back(std::move(c));
    }
    for (int a = cfg.k - 1; a >= 0; --a) {  // row-major increment
      if (++coords[a] <= block) break;
      coords[a] = 1;
    }
  }
  for (std::uint32_t mask = 1; mask < (1U << cfg.k); ++mask) {
    Clause c;
    c.kind = ClauseKind::disjunctive;
    for (int a = 1; a <= cfg.k; ++a)
      c.lits.push_back(
          Literal{var_of(a, inst.index[a - 1]), (mask >> (a - 1) & 1) != 0});
    out.push_back(std::move(c));
  }
  return out;
}

// Claim-2 system: m conjunctions of T literals over z_1..z_T with fair-coin
// signs. Two clauses are co-satisfiable iff their sign patterns coincide.
inline std::vector<Clause> gen_and_system(long m, long T, std::uint64_t seed) {
  if (T < 1) throw ConfigError("T must be >= 1");
  Rng rng(seed);
  std::vector<Clause> out;
  out.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    Clause c;
    c.kind = ClauseKind::conjunctive;
    for (int v = 1; v <= T; ++v)
      c.lits.push_back(Literal{v, rng.chance(0.5)});
    out.push_back(std::move(c));
  }
  return out;
}

// Max-AND reduction. Alice's clause D_k spells out row k of A over x_1..x_n
// and carries the agreed C_k (variables shifted past n); Bob contributes
// x_{i2} & C_{i1}. Exactly two clauses are co-satisfiable iff A_{i1,i2} = 1,
// provided the C system is pairwise exclusive.
inline std::vector<Clause> gen_maxand_index(const IndexInstance& inst,
                                            const HardnessConfig& cfg,
                                            std::uint64_t shared_seed) {
  if (static_cast<long>(inst.bits.size()) != cfg.m * cfg.n)
    throw DimensionMismatch("bit string must have m*n entries");
  if (inst.index.size() != 2) throw DimensionMismatch("index must be a pair");
  const long i1 = inst.index[0], i2 = inst.index[1];
  if (i1 < 1 || i1 > cfg.m || i2 < 1 || i2 > cfg.n)
    throw DimensionMismatch("index pair out of range");

  const std::vector<Clause> system = gen_and_system(cfg.m, cfg.T, shared_seed);
  auto shifted = [&](const Clause& c) {
    Clause s;
    s.kind = ClauseKind::conjunctive;
    for (const Literal& l : c.lits)
      s.lits.push_back(Literal{l.var + cfg.n, l.negated});
    return s;
  };

  std::vector<Clause> out;
  out.reserve(static_cast<std::size_t>(cfg.m) + 1);
  for (long k = 1; k <= cfg.m; ++k) {
    Clause d;
    d.kind = ClauseKind::conjunctive;
    for (long j = 1; j <= cfg.n; ++j) {
      const bool bit =
          inst.bits[static_cast<std::size_t>((k - 1) * cfg.n + (j - 1))] != 0;
      d.lits.push_back(Literal{static_cast<int>(j), !bit});
    }
    for (const Literal& l : shifted(system[static_cast<std::size_t>(k - 1)]).lits)
      d.lits.push_back(l);
    out.push_back(std::move(d));
  }
  Clause bob;
  bob.kind = ClauseKind::conjunctive;
  bob.lits.push_back(Literal{static_cast<int>(i2), false});
  for (const Literal& l : shifted(system[static_cast<std::size_t>(i1 - 1)]).lits)
    bob.lits.push_back(l);
  out.push_back(std::move(bob));
  return out;
}

// Theorem-8 gadget: C_1 spells A out as one big disjunction, C_2 = (x_i).
// Min-SAT opt > 0 iff A_i = 0.
inline std::vector<Clause> gen_minsat_index(const IndexInstance& inst, int n) {
  if (static_cast<int>(inst.bits.size()) != n)
    throw DimensionMismatch("bit string must have n entries");
  if (inst.index.size() != 1 || inst.index[0] < 1 || inst.index[0] > n)
    throw DimensionMismatch("index must be a scalar in [1, n]");
  Clause c1;
  c1.kind = ClauseKind::disjunctive;
  for (int j = 1; j <= n; ++j)
    c1.lits.push_back(Literal{j, inst.bits[static_cast<std::size_t>(j - 1)] == 0});
  Clause c2;
  c2.kind = ClauseKind::disjunctive;
  c2.lits.push_back(Literal{static_cast<int>(inst.index[0]), false});
  return {c1, c2};
}

// Maximum number of simultaneously satisfiable conjunctions. A set of
// conjunctions is co-satisfiable iff no variable occurs with both signs
// across it, which reduces the question to a maximum clique in the pairwise
// compatibility graph (pairwise agreement implies groupwise here).
inline std::pair<Assignment, long> exact_maxand(const std::vector<Clause>& clauses,
                                                int n) {
  constexpr std::size_t kMax = 1024;
  if (clauses.size() > 1000)
    throw InstanceTooLarge("exact Max-AND is guarded at 1000 clauses");
  const std::size_t m = clauses.size();
  if (m == 0) return {Assignment(static_cast<std::size_t>(n), false), 0};
  for (const Clause& c : clauses)
    if (c.kind != ClauseKind::conjunctive)
      throw ConfigError("exact Max-AND expects conjunctive clauses");

  std::vector<std::bitset<kMax>> adj(m);
  auto compatible = [](const Clause& a, const Clause& b) {
    std::size_t i = 0, j = 0;  // literals sorted by code
    while (i < a.lits.size() && j < b.lits.size()) {
      if (a.lits[i].var == b.lits[j].var) {
        if (a.lits[i].negated != b.lits[j].negated) return false;
        ++i, ++j;
      } else if (a.lits[i].var < b.lits[j].var) {
        ++i;
      } else {
        ++j;
      }
    }
    return true;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (compatible(clauses[i], clauses[j])) adj[i][j] = adj[j][i] = true;

  std::bitset<kMax> all;
  for (std::size_t i = 0; i < m; ++i) all[i] = true;
  std::bitset<kMax> best_clique;
  std::size_t best_size = 0;

  // Bron-Kerbosch with pivoting.
  auto expand = [&](auto&& self, std::bitset<kMax> r, std::bitset<kMax> p,
                    std::bitset<kMax> x) -> void {
    if (p.none() && x.none()) {
      if (r.count() > best_size) {
        best_size = r.count();
        best_clique = r;
      }
      return;
    }
    if (r.count() + p.count() <= best_size) return;
    std::size_t pivot = kMax;
    std::size_t best_deg = 0;
    const std::bitset<kMax> px = p | x;
    for (std::size_t v = 0; v < m; ++v) {
      if (!px[v]) continue;
      const std::size_t deg = (p & adj[v]).count();
      if (pivot == kMax || deg > best_deg) {
        pivot = v;
        best_deg = deg;
      }
    }
    std::bitset<kMax> candidates = p & ~adj[pivot];
    for (std::size_t v = 0; v < m; ++v) {
      if (!candidates[v]) continue;
      std::bitset<kMax> rv = r;
      rv[v] = true;
      self(self, rv, p & adj[v], x & adj[v]);
      p[v] = false;
      x[v] = true;
    }
  };
  expand(expand, std::bitset<kMax>{}, all, std::bitset<kMax>{});

  Assignment a(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < m; ++i) {
    if (!best_clique[i]) continue;
    for (const Literal& l : clauses[i].lits)
      a[static_cast<std::size_t>(l.var) - 1] = !l.negated;
  }
  return {std::move(a), static_cast<long>(best_size)};
}

inline std::vector<std::uint8_t> random_bits(std::size_t count, Rng& rng) {
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = rng.chance(0.5) ? 1 : 0;
  return bits;
}

}  // namespace satstream
