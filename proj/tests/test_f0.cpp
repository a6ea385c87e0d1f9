#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "satstream/f0_sketch.hpp"

using namespace satstream;

TEST_CASE("below k the count is exact") {
  F0Sketch sk(64, 7);
  sk.update(5);
  sk.update(9);
  sk.update(5);  // duplicate
  sk.update(100);
  REQUIRE(sk.estimate() == 3.0);
}

TEST_CASE("bottom-k estimate tracks large cardinalities") {
  const double eps = 0.1;
  const std::size_t k = F0Sketch::k_for(eps, 1e-3);
  int within = 0;
  const int runs = 200;
  for (int run = 0; run < runs; ++run) {
    F0Sketch sk(k, 424200 + run);
    for (std::uint64_t e = 0; e < 10000; ++e) sk.update(e);
    const double est = sk.estimate();
    within += est >= 9000.0 && est <= 11000.0;
  }
  REQUIRE(static_cast<double>(within) / runs >= 0.95);
}

TEST_CASE("merge of disjoint halves estimates the union") {
  const std::size_t k = F0Sketch::k_for(0.1, 1e-3);
  F0Sketch a(k, 99), b(k, 99);
  for (std::uint64_t e = 0; e < 500; ++e) a.update(e);
  for (std::uint64_t e = 500; e < 1000; ++e) b.update(e);
  const double est = merge(a, b).estimate();
  REQUIRE(est == Catch::Approx(1000.0).epsilon(0.10));
}

TEST_CASE("merge is order-insensitive") {
  F0Sketch a(32, 5), b(32, 5);
  for (std::uint64_t e = 0; e < 200; ++e) a.update(e * 3);
  for (std::uint64_t e = 0; e < 150; ++e) b.update(e * 7 + 1);
  REQUIRE(merge(a, b).estimate() == merge(b, a).estimate());
  // associativity across three sketches
  F0Sketch c(32, 5);
  for (std::uint64_t e = 0; e < 100; ++e) c.update(e * 11 + 2);
  REQUIRE(merge(merge(a, b), c).estimate() == merge(a, merge(b, c)).estimate());
}

TEST_CASE("merge rejects incompatible sketches") {
  F0Sketch a(32, 1), b(32, 2), c(16, 1);
  REQUIRE_THROWS_AS(merge(a, b), SeedMismatch);
  REQUIRE_THROWS_AS(merge(a, c), SeedMismatch);
}

TEST_CASE("sketch blobs round-trip") {
  const std::size_t k = 64;
  F0Sketch sk(k, 31415, 1e-4);
  for (std::uint64_t e = 0; e < 1000; ++e) sk.update(e * e + 1);
  const std::string blob = sk.serialize();
  const F0Sketch back = F0Sketch::deserialize(blob);
  REQUIRE(back.k() == sk.k());
  REQUIRE(back.seed() == sk.seed());
  REQUIRE(back.estimate() == sk.estimate());
  // a restored sketch keeps merging
  F0Sketch other(k, 31415);
  for (std::uint64_t e = 0; e < 100; ++e) other.update(e);
  REQUIRE_NOTHROW(merge(back, other));
  REQUIRE_THROWS_AS(F0Sketch::deserialize("bogus"), ConfigError);
}
