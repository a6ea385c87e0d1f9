#pragma once

// Exact rational simplex used to cross-check the double-precision LP solver.
// Textbook dense tableau over boost cpp_rational with Bland's rule and the
// box bounds written out as explicit rows; an intentionally different
// implementation path from the library solver.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "satstream/lp.hpp"

namespace rational_lp {

using Rat = boost::multiprecision::cpp_rational;

// maximize c.x subject to A x <= b, x >= 0; returns the optimum. All b >= 0.
inline Rat solve_standard(const std::vector<std::vector<Rat>>& a,
                          const std::vector<Rat>& b, const std::vector<Rat>& c) {
  const std::size_t m = a.size(), nv = c.size();
  const std::size_t cols = nv + m + 1;  // structurals, slacks, rhs
  std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(cols, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = a[i][j];
    t[i][nv + i] = 1;
    t[i][cols - 1] = b[i];
  }
  for (std::size_t j = 0; j < nv; ++j) t[m][j] = -c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = nv + i;

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {  // Bland: lowest index
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rat best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("rational LP unbounded");
    const Rat piv = t[leave][enter];
    for (Rat& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rat f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return t[m][cols - 1];
}

// Exact optimum of the Max-SAT LP for the given model.
inline double solve_gw_lp(const satstream::LPModel& model) {
  const std::size_t p = model.num_y(), q = model.num_z();
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  std::vector<Rat> c(p + q, 0);
  for (std::size_t j = 0; j < q; ++j) c[p + j] = 1;
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<Rat> row(p + q, 0);
    for (int col : model.rows[j].pos) row[static_cast<std::size_t>(col)] -= 1;
    for (int col : model.rows[j].neg) row[static_cast<std::size_t>(col)] += 1;
    row[p + j] = 1;
    a.push_back(std::move(row));
    b.emplace_back(static_cast<long>(model.rows[j].neg.size()));
  }
  for (std::size_t v = 0; v < p + q; ++v) {  // box upper bounds
    std::vector<Rat> row(p + q, 0);
    row[v] = 1;
    a.push_back(std::move(row));
    b.emplace_back(1);
  }
  const Rat opt = solve_standard(a, b, c);
  return opt.convert_to<double>();
}

}  // namespace rational_lp
