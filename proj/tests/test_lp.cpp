#include <catch2/catch_amalgamated.hpp>

#include "satstream/harness.hpp"
#include "satstream/lp.hpp"
#include "support/rational_lp.hpp"

using namespace satstream;

namespace {
Clause mk(std::initializer_list<int> lits) {
  std::vector<Literal> raw;
  for (int v : lits) raw.push_back(literal_from_int(v));
  return *normalize_clause(std::move(raw), ClauseKind::disjunctive);
}

double row_value(const LPModel& model, std::size_t j, const LPSolution& sol) {
  double t = static_cast<double>(model.rows[j].neg.size());
  for (int c : model.rows[j].pos) t += sol.y_star[static_cast<std::size_t>(c)];
  for (int c : model.rows[j].neg) t -= sol.y_star[static_cast<std::size_t>(c)];
  return t;
}
}  // namespace

TEST_CASE("build_lp shapes rows from clauses") {
  {
    const LPModel m = build_lp({mk({1})});
    REQUIRE(m.num_y() == 1);
    REQUIRE(m.num_z() == 1);
    REQUIRE(m.rows[0].pos == std::vector<int>{0});
    REQUIRE(m.rows[0].neg.empty());
  }
  {
    const LPModel m = build_lp({mk({1, -2})});
    REQUIRE(m.num_y() == 2);
    REQUIRE(m.rows[0].pos == std::vector<int>{0});
    REQUIRE(m.rows[0].neg == std::vector<int>{1});
  }
  {
    const LPModel m = build_lp({});
    REQUIRE(m.num_y() == 0);
    REQUIRE(m.num_z() == 0);
    REQUIRE(solve_lp(m).objective == 0.0);
  }
}

TEST_CASE("single positive clause solves to one") {
  const LPModel m = build_lp({mk({1})});
  const LPSolution sol = solve_lp(m);
  REQUIRE(sol.objective == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(sol.y_star[0] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("complementary units cap at one") {
  const LPModel m = build_lp({mk({1}), mk({-1})});
  const LPSolution sol = solve_lp(m);
  REQUIRE(sol.objective == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("S2 system has fractional optimum four") {
  const std::vector<Clause> s2 = {mk({1, 2}), mk({-1, 2}), mk({1, -2}),
                                  mk({-1, -2})};
  const LPModel m = build_lp(s2);
  const LPSolution sol = solve_lp(m);
  REQUIRE(sol.objective == Catch::Approx(4.0).margin(1e-9));
  for (double z : sol.z_star) REQUIRE(z == Catch::Approx(1.0).margin(1e-9));
  // the integral optimum is 3: this is the integrality-gap instance
}

TEST_CASE("solutions are feasible") {
  Rng rng(424242);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(6));
    const long m = 10 + static_cast<long>(rng.below(30));
    const auto clauses =
        random_instance_clauses(n, m, 1, std::min(4, n), 100 + trial);
    const LPModel model = build_lp(clauses);
    const LPSolution sol = solve_lp(model);
    double total = 0.0;
    for (std::size_t j = 0; j < model.rows.size(); ++j) {
      REQUIRE(sol.z_star[j] >= -1e-9);
      REQUIRE(sol.z_star[j] <= 1.0 + 1e-9);
      REQUIRE(row_value(model, j, sol) - sol.z_star[j] >= -1e-9);
      total += sol.z_star[j];
    }
    REQUIRE(total == Catch::Approx(sol.objective).margin(1e-9));
    for (double y : sol.y_star) {
      REQUIRE(y >= -1e-9);
      REQUIRE(y <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("objective matches the exact rational solver") {
  // hand instances first
  for (const auto& clauses :
       {std::vector<Clause>{mk({1})}, std::vector<Clause>{mk({1}), mk({-1})},
        std::vector<Clause>{mk({1, 2}), mk({-1, 2}), mk({1, -2}), mk({-1, -2})}}) {
    const LPModel model = build_lp(clauses);
    REQUIRE(solve_lp(model).objective ==
            Catch::Approx(rational_lp::solve_gw_lp(model)).margin(1e-6));
  }
  // random small instances, m <= 50
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 8;
    const long m = 5 + (trial * 7) % 46;
    const auto clauses =
        random_instance_clauses(n, m, 1, std::min(3, n), 9000 + trial);
    const LPModel model = build_lp(clauses);
    const double exact = rational_lp::solve_gw_lp(model);
    REQUIRE(solve_lp(model).objective == Catch::Approx(exact).margin(1e-6));
  }
}
