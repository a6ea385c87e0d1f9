#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "satstream/clause_codec.hpp"
#include "satstream/rng.hpp"

using namespace satstream;

namespace {
// All normalized disjunctive clauses of size <= beta over n variables.
std::vector<Clause> enumerate_normalized(int n, int beta) {
  std::vector<Clause> out;
  const int codes = 2 * n;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int next) -> void {
    if (!pick.empty() && static_cast<int>(pick.size()) <= beta) {
      Clause c;
      for (int code : pick) c.lits.push_back(literal_from_code(code));
      bool ok = true;
      for (std::size_t i = 1; i < c.lits.size(); ++i)
        ok = ok && c.lits[i].var != c.lits[i - 1].var;
      if (ok) out.push_back(c);
    }
    if (static_cast<int>(pick.size()) == beta) return;
    for (int code = next; code < codes; ++code) {
      pick.push_back(code);
      self(self, code + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}
}  // namespace

TEST_CASE("two-element universe has the fixed rank order") {
  ClauseCodec codec(1, 1);
  REQUIRE(codec.universe_size() == 2);
  Clause pos{{{1, false}}, ClauseKind::disjunctive};
  Clause neg{{{1, true}}, ClauseKind::disjunctive};
  REQUIRE(codec.encode(pos) == 0);
  REQUIRE(codec.encode(neg) == 1);
  REQUIRE(codec.decode(0) == pos);
  REQUIRE(codec.decode(1) == neg);
}

TEST_CASE("n=2 beta=2 universe has 10 distinct ranks") {
  ClauseCodec codec(2, 2);
  REQUIRE(codec.universe_size() == 10);  // C(4,1) + C(4,2)
  std::set<std::uint64_t> ranks;
  for (std::uint64_t idx = 0; idx < 10; ++idx) {
    const Clause c = codec.decode(idx);
    REQUIRE(codec.encode(c) == idx);
    ranks.insert(codec.encode(c));
  }
  REQUIRE(ranks.size() == 10);
}

TEST_CASE("random small clauses round-trip") {
  ClauseCodec codec(10, 4);
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    Clause c;
    const int len = 1 + static_cast<int>(rng.below(4));
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < len)
      vars.insert(1 + static_cast<int>(rng.below(10)));
    for (int v : vars) c.lits.push_back(Literal{v, rng.chance(0.5)});
    REQUIRE(codec.decode(codec.encode(c)) == c);
  }
}

TEST_CASE("exhaustive bijectivity for small parameters") {
  for (int n = 1; n <= 3; ++n) {
    for (int beta = 1; beta <= 3; ++beta) {
      ClauseCodec codec(n, beta);
      std::set<std::uint64_t> seen;
      for (const Clause& c : enumerate_normalized(n, beta)) {
        const std::uint64_t idx = codec.encode(c);
        REQUIRE(idx < codec.universe_size());
        REQUIRE(seen.insert(idx).second);  // injective
        REQUIRE(codec.decode(idx) == c);
      }
    }
  }
}

TEST_CASE("codec bounds") {
  ClauseCodec codec(2, 2);
  Clause too_big{{{1, false}, {1, true}, {2, false}}, ClauseKind::disjunctive};
  REQUIRE_THROWS_AS(codec.encode(too_big), ClauseTooLarge);
  REQUIRE_THROWS_AS(codec.decode(codec.universe_size()), IndexOutOfRange);
  REQUIRE_THROWS_AS(ClauseCodec(64, 64), ConfigError);  // over the 2^60 cap
}
