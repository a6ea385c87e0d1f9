#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "satstream/clause.hpp"
#include "satstream/errors.hpp"

namespace satstream {

// The Goemans-Williamson relaxation of Max-SAT:
//   maximize sum z_j  s.t.  sum_{i in P_j} y_i + sum_{i in N_j} (1 - y_i) >= z_j
// with every y_i and z_j box-bounded to [0, 1]. Rows reference columns of
// `vars`, which lists the distinct variables occurring in the clause set.
struct LPModel {
  struct Row {
    std::vector<int> pos;  // column indices with positive literals
    std::vector<int> neg;  // column indices with negated literals
  };
  std::vector<int> vars;  // sorted original variable ids
  std::vector<Row> rows;

  std::size_t num_y() const { return vars.size(); }
  std::size_t num_z() const { return rows.size(); }
};

struct LPSolution {
  std::vector<double> y_star;  // aligned with model.vars
  std::vector<double> z_star;
  double objective = 0.0;
};

inline LPModel build_lp(const std::vector<Clause>& clauses) {
  LPModel model;
  for (const Clause& c : clauses)
    for (const Literal& l : c.lits) model.vars.push_back(l.var);
  std::sort(model.vars.begin(), model.vars.end());
  model.vars.erase(std::unique(model.vars.begin(), model.vars.end()),
                   model.vars.end());
  auto column = [&model](int var) {
    return static_cast<int>(std::lower_bound(model.vars.begin(),
                                             model.vars.end(), var) -
                            model.vars.begin());
  };
  model.rows.reserve(clauses.size());
  for (const Clause& c : clauses) {
    LPModel::Row row;
    for (const Literal& l : c.lits)
      (l.negated ? row.neg : row.pos).push_back(column(l.var));
    model.rows.push_back(std::move(row));
  }
  return model;
}

namespace detail {

// Dense primal simplex over variables with box bounds [lo, up]; slacks carry
// an infinite upper bound. Dantzig pricing with a switch to Bland's rule
// once a long degenerate streak indicates cycling risk.
class BoundedSimplex {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // maximize c.x subject to A x + s = b with s >= 0.
  BoundedSimplex(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double> c, std::vector<double> lo,
                 std::vector<double> up, double tol)
      : tol_(tol),
        rows_(a.size()),
        structs_(c.size()),
        cols_(c.size() + a.size()) {
    T_.assign(rows_, std::vector<double>(cols_, 0.0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < structs_; ++j) T_[i][j] = a[i][j];
    for (std::size_t i = 0; i < rows_; ++i) T_[i][structs_ + i] = 1.0;
    cost_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < structs_; ++j) cost_[j] = c[j];
    lo_ = std::move(lo);
    up_ = std::move(up);
    lo_.resize(cols_, 0.0);
    up_.resize(cols_, kInf);
    value_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < structs_; ++j) value_[j] = lo_[j];
    basis_.resize(rows_);
    row_of_.assign(cols_, -1);
    for (std::size_t i = 0; i < rows_; ++i) {
      basis_[i] = static_cast<int>(structs_ + i);
      row_of_[structs_ + i] = static_cast<int>(i);
      value_[structs_ + i] = b[i];  // all structurals start at lower bound 0
      if (b[i] < -tol_) throw NumericalFailure("negative slack at start");
    }
    reduced_ = cost_;  // slack costs are zero and basis costs are zero
  }

  void solve(long iteration_cap) {
    long degenerate_streak = 0;
    bool bland = false;
    for (long iter = 0; iter < iteration_cap; ++iter) {
      const int e = pick_entering(bland);
      if (e < 0) return;  // optimal
      const double moved = step(e);
      if (moved <= tol_) {
        if (++degenerate_streak > 256) bland = true;
      } else {
        degenerate_streak = 0;
      }
    }
    throw NumericalFailure("simplex iteration cap exceeded");
  }

  double value_of(std::size_t col) const { return value_[col]; }

  double objective() const {
    double obj = 0.0;
    for (std::size_t j = 0; j < structs_; ++j) obj += cost_[j] * value_[j];
    return obj;
  }

 private:
  // Entering candidate: nonbasic improving its bound side. Returns -1 at
  // optimality.
  int pick_entering(bool bland) const {
    int best = -1;
    double best_score = tol_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (row_of_[j] >= 0) continue;
      const bool at_lower = value_[j] <= lo_[j] + tol_;
      const double d = reduced_[j];
      double score = 0.0;
      if (at_lower && d > tol_) score = d;
      else if (!at_lower && d < -tol_) score = -d;
      else continue;
      if (bland) return static_cast<int>(j);
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(j);
      }
    }
    return best;
  }

  // Moves the entering variable as far as its own bound or the first basic
  // bound allows; pivots unless the move is a plain bound flip.
  double step(int e) {
    const bool increasing = value_[e] <= lo_[e] + tol_;
    const double dir = increasing ? 1.0 : -1.0;

    double limit = up_[e] - lo_[e];  // bound-to-bound flip distance
    int pivot_row = -1;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double alpha = T_[i][e] * dir;  // basic value moves by -alpha * t
      const int bcol = basis_[i];
      double room;
      if (alpha > tol_) {
        room = (value_[bcol] - lo_[bcol]) / alpha;
      } else if (alpha < -tol_) {
        room = (up_[bcol] >= kInf) ? kInf : (up_[bcol] - value_[bcol]) / -alpha;
      } else {
        continue;
      }
      if (room < limit - tol_ ||
          (pivot_row >= 0 && room < limit + tol_ && basis_[i] < basis_[pivot_row])) {
        limit = std::max(room, 0.0);
        pivot_row = static_cast<int>(i);
      }
    }
    if (limit >= kInf) throw NumericalFailure("unbounded direction");

    for (std::size_t i = 0; i < rows_; ++i)
      value_[basis_[i]] -= T_[i][e] * dir * limit;
    value_[e] += dir * limit;

    if (pivot_row >= 0) pivot(pivot_row, e);
    return limit;
  }

  void pivot(int r, int e) {
    const double inv = 1.0 / T_[r][e];
    for (std::size_t j = 0; j < cols_; ++j) T_[r][j] *= inv;
    T_[r][e] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (static_cast<int>(i) == r) continue;
      const double f = T_[i][e];
      if (std::fabs(f) < 1e-14) continue;
      for (std::size_t j = 0; j < cols_; ++j) T_[i][j] -= f * T_[r][j];
      T_[i][e] = 0.0;
    }
    const double fr = reduced_[e];
    if (std::fabs(fr) > 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= fr * T_[r][j];
      reduced_[e] = 0.0;
    }
    row_of_[basis_[r]] = -1;
    basis_[r] = e;
    row_of_[e] = r;
  }

  double tol_;
  std::size_t rows_, structs_, cols_;
  std::vector<std::vector<double>> T_;
  std::vector<double> cost_, reduced_, lo_, up_, value_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
};

inline double row_total(const LPModel::Row& row, const std::vector<double>& y) {
  double t = static_cast<double>(row.neg.size());
  for (int c : row.pos) t += y[static_cast<std::size_t>(c)];
  for (int c : row.neg) t -= y[static_cast<std::size_t>(c)];
  return t;
}

// Solves the LP restricted to the given rows; other clauses are provably
// non-binding once their row total reaches 1.
inline std::vector<double> solve_restricted(const LPModel& model,
                                            const std::vector<int>& active,
                                            double tol, long cap) {
  const std::size_t p = model.num_y();
  const std::size_t q = active.size();
  // columns: y_0..y_{p-1}, z_0..z_{q-1}
  std::vector<std::vector<double>> a(q, std::vector<double>(p + q, 0.0));
  std::vector<double> b(q, 0.0);
  std::vector<double> c(p + q, 0.0);
  for (std::size_t t = 0; t < q; ++t) {
    const LPModel::Row& row = model.rows[static_cast<std::size_t>(active[t])];
    // z_j - sum_P y + sum_N y <= |N_j|
    for (int col : row.pos) a[t][static_cast<std::size_t>(col)] -= 1.0;
    for (int col : row.neg) a[t][static_cast<std::size_t>(col)] += 1.0;
    a[t][p + t] = 1.0;
    b[t] = static_cast<double>(row.neg.size());
    c[p + t] = 1.0;
  }
  std::vector<double> lo(p + q, 0.0), up(p + q, 1.0);
  BoundedSimplex simplex(std::move(a), std::move(b), std::move(c),
                         std::move(lo), std::move(up), tol);
  simplex.solve(cap);
  std::vector<double> y(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) y[j] = simplex.value_of(j);
  return y;
}

}  // namespace detail

// Exact fractional optimum of the model. Starts from the rows that can be
// tight at the midpoint assignment and activates further rows until every
// inactive clause certifies z_j = 1; the restricted optimum is an upper
// bound on the full objective throughout, so termination proves optimality.
inline LPSolution solve_lp(const LPModel& model, double tol = 1e-9,
                           long iteration_cap = 1000000) {
  LPSolution sol;
  sol.y_star.assign(model.num_y(), 0.5);
  sol.z_star.assign(model.num_z(), 0.0);
  if (model.rows.empty()) {
    sol.objective = 0.0;
    return sol;
  }

  std::vector<char> is_active(model.rows.size(), 0);
  std::vector<int> active;
  for (std::size_t j = 0; j < model.rows.size(); ++j) {
    const auto& row = model.rows[j];
    if (row.pos.size() + row.neg.size() <= 1) {
      is_active[j] = 1;
      active.push_back(static_cast<int>(j));
    }
  }

  std::vector<double> y(model.num_y(), 0.5);
  for (;;) {
    if (!active.empty())
      y = detail::solve_restricted(model, active, tol, iteration_cap);
    bool grew = false;
    for (std::size_t j = 0; j < model.rows.size(); ++j) {
      if (is_active[j]) continue;
      if (detail::row_total(model.rows[j], y) < 1.0 - 1e-9) {
        is_active[j] = 1;
        active.push_back(static_cast<int>(j));
        grew = true;
      }
    }
    if (!grew) break;
  }

  sol.y_star = y;
  sol.objective = 0.0;
  for (std::size_t j = 0; j < model.rows.size(); ++j) {
    const double t = detail::row_total(model.rows[j], y);
    sol.z_star[j] = std::clamp(t, 0.0, 1.0);
    sol.objective += sol.z_star[j];
  }
  return sol;
}

}  // namespace satstream
