#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"

namespace satstream {

namespace detail {

// Branch-and-bound search over assignments for disjunctive clause sets.
// Maximization prunes on the count of clauses not yet falsified;
// minimization prunes on the monotone count of clauses already satisfied.
class ClauseSearch {
 public:
  ClauseSearch(const std::vector<Clause>& clauses, int n)
      : n_(n), m_(static_cast<long>(clauses.size())) {
    for (const Clause& c : clauses)
      if (c.kind != ClauseKind::disjunctive)
        throw ConfigError("exact search expects disjunctive clauses");
    occ_pos_.assign(static_cast<std::size_t>(n) + 1, {});
    occ_neg_.assign(static_cast<std::size_t>(n) + 1, {});
    true_lits_.assign(clauses.size(), 0);
    open_lits_.assign(clauses.size(), 0);
    for (std::size_t j = 0; j < clauses.size(); ++j) {
      open_lits_[j] = static_cast<int>(clauses[j].size());
      for (const Literal& l : clauses[j]) {
        (l.negated ? occ_neg_ : occ_pos_)[static_cast<std::size_t>(l.var)]
            .push_back(static_cast<int>(j));
      }
    }
    order_.clear();
    for (int v = 1; v <= n; ++v)
      if (!occ_pos_[v].empty() || !occ_neg_[v].empty()) order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(), [this](int a, int b) {
      return occ_pos_[a].size() + occ_neg_[a].size() >
             occ_pos_[b].size() + occ_neg_[b].size();
    });
    values_.assign(static_cast<std::size_t>(n) + 1, false);
  }

  std::pair<Assignment, long> maximize() {
    best_value_ = -1;
    maximizing_ = true;
    dfs(0);
    return finish();
  }

  std::pair<Assignment, long> minimize() {
    best_value_ = m_ + 1;
    maximizing_ = false;
    dfs(0);
    return finish();
  }

  // First assignment satisfying everything, if one exists.
  std::optional<Assignment> satisfy_all() {
    best_value_ = m_ - 1;  // only improvements reaching m_ are recorded
    maximizing_ = true;
    stop_at_target_ = true;
    dfs(0);
    if (best_value_ < m_) return std::nullopt;
    return finish().first;
  }

 private:
  std::pair<Assignment, long> finish() {
    Assignment a(static_cast<std::size_t>(n_), false);
    for (int v = 1; v <= n_; ++v)
      a[static_cast<std::size_t>(v) - 1] = best_assignment_.empty()
          ? false
          : best_assignment_[static_cast<std::size_t>(v)];
    return {std::move(a), std::max<long>(best_value_, 0)};
  }

  void record_leaf() {
    const long value = satisfied_;
    const bool better = maximizing_ ? value > best_value_ : value < best_value_;
    if (better) {
      best_value_ = value;
      best_assignment_ = values_;
    }
  }

  bool done() const {
    if (stop_at_target_ && best_value_ >= m_) return true;
    return maximizing_ ? best_value_ >= m_ : best_value_ <= 0;
  }

  void dfs(std::size_t depth) {
    if (done()) return;
    if (maximizing_ && m_ - falsified_ <= best_value_) return;
    if (!maximizing_ && satisfied_ >= best_value_) return;
    if (depth == order_.size()) {
      record_leaf();
      return;
    }
    const int v = order_[depth];
    const bool more_positive = occ_pos_[v].size() >= occ_neg_[v].size();
    // Maximization satisfies greedily first to lift the incumbent early;
    // minimization explores the sparse side first.
    const bool first = maximizing_ ? more_positive : !more_positive;
    for (const bool val : {first, !first}) {
      assign(v, val);
      dfs(depth + 1);
      undo(v, val);
      if (done()) return;
    }
  }

  void assign(int v, bool val) {
    values_[static_cast<std::size_t>(v)] = val;
    for (int j : (val ? occ_pos_ : occ_neg_)[static_cast<std::size_t>(v)]) {
      if (true_lits_[j]++ == 0) ++satisfied_;
    }
    for (int j : (val ? occ_neg_ : occ_pos_)[static_cast<std::size_t>(v)]) {
      if (--open_lits_[j] == 0 && true_lits_[j] == 0) ++falsified_;
    }
  }

  void undo(int v, bool val) {
    for (int j : (val ? occ_pos_ : occ_neg_)[static_cast<std::size_t>(v)]) {
      if (--true_lits_[j] == 0) --satisfied_;
    }
    for (int j : (val ? occ_neg_ : occ_pos_)[static_cast<std::size_t>(v)]) {
      if (open_lits_[j]++ == 0 && true_lits_[j] == 0) --falsified_;
    }
  }

  int n_;
  long m_;
  bool maximizing_ = true;
  bool stop_at_target_ = false;
  std::vector<std::vector<int>> occ_pos_, occ_neg_;
  std::vector<int> true_lits_, open_lits_;
  std::vector<int> order_;
  std::vector<bool> values_;
  long satisfied_ = 0;
  long falsified_ = 0;
  long best_value_ = 0;
  std::vector<bool> best_assignment_;
};

}  // namespace detail

constexpr int kExactGuard = 30;
constexpr int kSatGuard = 25;

namespace detail {
// The search enumerates occurring variables only, so the guard counts those.
inline int occurring_vars(const std::vector<Clause>& clauses) {
  std::vector<char> seen;
  int count = 0;
  for (const Clause& c : clauses) {
    for (const Literal& l : c.lits) {
      if (static_cast<std::size_t>(l.var) >= seen.size())
        seen.resize(static_cast<std::size_t>(l.var) + 1, 0);
      if (!seen[static_cast<std::size_t>(l.var)]) {
        seen[static_cast<std::size_t>(l.var)] = 1;
        ++count;
      }
    }
  }
  return count;
}
}  // namespace detail

// Optimal Max-SAT assignment by exhaustive branch and bound.
inline std::pair<Assignment, long> exact_maxsat(
    const std::vector<Clause>& clauses, int n) {
  const int occ = detail::occurring_vars(clauses);
  if (occ > kExactGuard) throw TooManyVariables(occ, kExactGuard);
  if (clauses.empty()) return {Assignment(static_cast<std::size_t>(n), false), 0};
  return detail::ClauseSearch(clauses, n).maximize();
}

// Optimal Min-SAT assignment, same search with inverted pruning.
inline std::pair<Assignment, long> exact_minsat(
    const std::vector<Clause>& clauses, int n) {
  const int occ = detail::occurring_vars(clauses);
  if (occ > kExactGuard) throw TooManyVariables(occ, kExactGuard);
  if (clauses.empty()) return {Assignment(static_cast<std::size_t>(n), false), 0};
  return detail::ClauseSearch(clauses, n).minimize();
}

// Witness satisfying all clauses, or absent when none exists.
inline std::optional<Assignment> verify_all_satisfiable(
    const std::vector<Clause>& clauses, int n) {
  const int occ = detail::occurring_vars(clauses);
  if (occ > kSatGuard) throw TooManyVariables(occ, kSatGuard);
  if (clauses.empty()) return Assignment(static_cast<std::size_t>(n), false);
  return detail::ClauseSearch(clauses, n).satisfy_all();
}

}  // namespace satstream
