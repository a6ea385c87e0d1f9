#pragma once

// Independent brute-force oracles for the tests. These deliberately avoid
// the library's search code: satisfied counts come from falsifying-pattern
// enumeration over the full assignment space, evaluated straight from the
// clause definition.

#include <cstdint>
#include <vector>

#include "satstream/clause.hpp"

namespace oracles {

using satstream::Assignment;
using satstream::Clause;
using satstream::ClauseKind;
using satstream::Literal;

// counts[mask] = number of clauses satisfied by the assignment where bit
// (v-1) of mask gives the value of x_v. Disjunctive clauses only.
inline std::vector<int> satisfied_counts(const std::vector<Clause>& clauses,
                                         int n) {
  const std::size_t space = 1ULL << n;
  std::vector<int> counts(space, static_cast<int>(clauses.size()));
  for (const Clause& c : clauses) {
    std::uint32_t fixed = 0, pattern = 0;
    for (const Literal& l : c.lits) {
      fixed |= 1U << (l.var - 1);
      if (l.negated) pattern |= 1U << (l.var - 1);  // falsified when true
    }
    const std::uint32_t free_mask =
        static_cast<std::uint32_t>(space - 1) & ~fixed;
    std::uint32_t sub = free_mask;
    for (;;) {  // every assignment matching the falsifying pattern
      --counts[pattern | sub];
      if (sub == 0) break;
      sub = (sub - 1) & free_mask;
    }
  }
  return counts;
}

inline long maxsat_opt(const std::vector<Clause>& clauses, int n) {
  long best = 0;
  for (int v : satisfied_counts(clauses, n))
    if (v > best) best = v;
  return best;
}

inline long minsat_opt(const std::vector<Clause>& clauses, int n) {
  const std::vector<int> counts = satisfied_counts(clauses, n);
  long best = counts.empty() ? 0 : counts[0];
  for (int v : counts)
    if (v < best) best = v;
  return best;
}

inline bool all_satisfiable(const std::vector<Clause>& clauses, int n) {
  return maxsat_opt(clauses, n) == static_cast<long>(clauses.size());
}

// Plain per-assignment evaluation, both clause kinds; used where the pattern
// trick does not apply.
inline long count_satisfied(const std::vector<Clause>& clauses,
                            std::uint32_t mask) {
  long sat = 0;
  for (const Clause& c : clauses) {
    bool value;
    if (c.kind == ClauseKind::disjunctive) {
      value = false;
      for (const Literal& l : c.lits) {
        const bool lit = ((mask >> (l.var - 1)) & 1) != l.negated;
        if (lit) {
          value = true;
          break;
        }
      }
    } else {
      value = true;
      for (const Literal& l : c.lits) {
        const bool lit = ((mask >> (l.var - 1)) & 1) != l.negated;
        if (!lit) {
          value = false;
          break;
        }
      }
    }
    sat += value;
  }
  return sat;
}

inline long maxand_opt(const std::vector<Clause>& clauses, int n) {
  long best = 0;
  for (std::uint32_t mask = 0; mask < (1ULL << n); ++mask)
    best = std::max(best, count_satisfied(clauses, mask));
  return best;
}

inline Assignment assignment_from_mask(std::uint32_t mask, int n) {
  Assignment a(static_cast<std::size_t>(n), false);
  for (int v = 1; v <= n; ++v) a[v - 1] = ((mask >> (v - 1)) & 1) != 0;
  return a;
}

}  // namespace oracles
