#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satstream/errors.hpp"

namespace satstream {

struct Literal {
  int var = 0;  // 1-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Total order on literals: x1 < ~x1 < x2 < ~x2 < ...
// This is the code order used everywhere (sorting, ranking, rendering).
inline int literal_code(const Literal& l) {
  return 2 * (l.var - 1) + (l.negated ? 1 : 0);
}

inline Literal literal_from_code(int code) {
  return Literal{code / 2 + 1, (code & 1) != 0};
}

// Signed DIMACS-style integer: k > 0 is x_k, k < 0 is ~x_|k|.
inline Literal literal_from_int(int v) {
  return Literal{v < 0 ? -v : v, v < 0};
}

inline int literal_to_int(const Literal& l) {
  return l.negated ? -l.var : l.var;
}

enum class ClauseKind : std::uint8_t { disjunctive, conjunctive };

// A normalized clause: literals sorted by code, no repeated variable,
// nonempty. Construct through normalize_clause; the fields stay public so
// generators and codecs can build clauses they already know are canonical.
struct Clause {
  std::vector<Literal> lits;
  ClauseKind kind = ClauseKind::disjunctive;

  std::size_t size() const { return lits.size(); }
  auto begin() const { return lits.begin(); }
  auto end() const { return lits.end(); }

  friend bool operator==(const Clause&, const Clause&) = default;
};

// Removes duplicate literals and sorts by code. A disjunctive clause holding
// some variable with both signs is trivially true and reported as absent so
// streams can drop it. The conjunctive counterpart is an unsatisfiable
// constant, which has no clause representation: that is an error.
inline std::optional<Clause> normalize_clause(std::vector<Literal> raw,
                                              ClauseKind kind) {
  if (raw.empty()) throw EmptyClause();
  std::sort(raw.begin(), raw.end(), [](const Literal& a, const Literal& b) {
    return literal_code(a) < literal_code(b);
  });
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].var == raw[i - 1].var) {
      if (kind == ClauseKind::conjunctive)
        throw ContradictoryConjunction(raw[i].var);
      return std::nullopt;
    }
  }
  return Clause{std::move(raw), kind};
}

inline std::string to_string(const Clause& c) {
  std::string s;
  const char* sep = c.kind == ClauseKind::disjunctive ? " | " : " & ";
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) s += sep;
    if (c.lits[i].negated) s += '~';
    s += 'x';
    s += std::to_string(c.lits[i].var);
  }
  return s.empty() ? "()" : s;
}

// Total assignment to variables 1..n; values[i-1] is the value of x_i.
using Assignment = std::vector<bool>;

inline bool literal_true(const Literal& l, const Assignment& a) {
  return a[static_cast<std::size_t>(l.var) - 1] != l.negated;
}

inline bool clause_satisfied(const Clause& c, const Assignment& a) {
  if (c.kind == ClauseKind::disjunctive) {
    for (const Literal& l : c.lits)
      if (literal_true(l, a)) return true;
    return false;
  }
  for (const Literal& l : c.lits)
    if (!literal_true(l, a)) return false;
  return true;
}

// Number of clauses satisfied by `a`. Every clause must draw its variables
// from [1, a.size()].
inline long evaluate(const Assignment& a, const std::vector<Clause>& clauses) {
  long count = 0;
  for (const Clause& c : clauses) count += clause_satisfied(c, a);
  return count;
}

inline Assignment complement(Assignment a) {
  a.flip();
  return a;
}

inline std::string assignment_bits(const Assignment& a) {
  std::string s(a.size(), '0');
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) s[i] = '1';
  return s;
}

// Stream-wide parameters: n variables, an up-front upper bound m on the
// clause count, the accuracy eps and the sampling constant K.
struct Parameters {
  int n = 0;
  long m = 0;
  double eps = 0.1;
  double K = 4.0;

  void validate() const {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (m < 1) throw ConfigError("m must be >= 1");
    if (!(eps > 0.0) || eps > 0.25)
      throw ConfigError("eps must lie in (0, 1/4]");
    if (!(K > 0.0)) throw ConfigError("K must be > 0");
  }
};

}  // namespace satstream
