#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>

#include "satstream/l0_sampler.hpp"
#include "satstream/reservoir.hpp"
#include "satstream/rng.hpp"

using namespace satstream;

TEST_CASE("underfull reservoir keeps everything") {
  ReservoirSampler<int> r(5, 1);
  r.offer(10);
  r.offer(20);
  r.offer(30);
  REQUIRE(r.items() == std::vector<int>{10, 20, 30});
}

TEST_CASE("capacity-1 reservoir is a fair pick of two") {
  int kept_first = 0;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    ReservoirSampler<int> r(1, 1000 + i);
    r.offer(1);
    r.offer(2);
    kept_first += r.items()[0] == 1;
  }
  const double freq = static_cast<double>(kept_first) / runs;
  REQUIRE(freq == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("capacity-2 reservoir picks pairs uniformly") {
  std::map<std::set<int>, int> pair_counts;
  const int runs = 10000;
  for (int i = 0; i < runs; ++i) {
    ReservoirSampler<int> r(2, 5000 + i);
    r.offer(1);
    r.offer(2);
    r.offer(3);
    pair_counts[{r.items()[0], r.items()[1]}]++;
  }
  REQUIRE(pair_counts.size() == 3);
  for (const auto& [pair, count] : pair_counts)
    REQUIRE(static_cast<double>(count) / runs ==
            Catch::Approx(1.0 / 3).margin(0.02));
}

TEST_CASE("reservoir subsets are uniform for s <= 2, t <= 4") {
  for (int s = 1; s <= 2; ++s) {
    for (int t = s; t <= 4; ++t) {
      std::map<std::set<int>, int> counts;
      const int runs = 20000;
      for (int run = 0; run < runs; ++run) {
        ReservoirSampler<int> r(static_cast<std::size_t>(s),
                                static_cast<std::uint64_t>(run * 7 + s * 131 + t));
        for (int item = 1; item <= t; ++item) r.offer(item);
        counts[std::set<int>(r.items().begin(), r.items().end())]++;
      }
      long subsets = 1;  // C(t, s)
      for (int i = 0; i < s; ++i) subsets = subsets * (t - i) / (i + 1);
      REQUIRE(static_cast<long>(counts.size()) == subsets);
      const double expect = static_cast<double>(runs) / subsets;
      const double sigma = std::sqrt(expect * (1.0 - 1.0 / subsets));
      for (const auto& [subset, count] : counts)
        REQUIRE(std::fabs(count - expect) <= 3.0 * sigma + 1.0);
    }
  }
}

TEST_CASE("l0 cancellation leaves an empty sampler") {
  L0Sampler s(100, 1e-3, 42);
  s.update(7, +1);
  s.update(7, -1);
  REQUIRE(s.definitely_empty());
  REQUIRE(!s.extract().has_value());
}

TEST_CASE("l0 singleton support always recovers") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    L0Sampler s(100, 1e-3, seed);
    s.update(3, +1);
    auto got = s.extract();
    REQUIRE(got.has_value());
    REQUIRE(*got == 3);
  }
}

TEST_CASE("l0 extraction returns only live elements") {
  // reference multiset: inserts 0..7 minus deletes 0..3 leaves {4..7}
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    L0Sampler s(64, 1e-2, 977 + seed);
    for (std::uint64_t i = 0; i < 8; ++i) s.update(i, +1);
    for (std::uint64_t i = 0; i < 4; ++i) s.update(i, -1);
    auto got = s.extract();
    if (got.has_value()) {
      REQUIRE(*got >= 4);
      REQUIRE(*got <= 7);
    }
  }
}

TEST_CASE("l0 empty support extracts to absent") {
  L0Sampler s(32, 1e-3, 5);
  REQUIRE(!s.extract().has_value());
  REQUIRE_THROWS_AS(s.update(32, +1), IndexOutOfRange);
}

TEST_CASE("l0 two-element support is a fair pick") {
  const double delta = 1e-2;
  int hits[2] = {0, 0};
  int failures = 0;
  const int runs = 10000;
  for (int run = 0; run < runs; ++run) {
    L0Sampler s(16, delta, 31337 + run);
    s.update(2, +1);
    s.update(9, +1);
    auto got = s.extract();
    if (!got) {
      ++failures;
      continue;
    }
    REQUIRE((*got == 2 || *got == 9));
    ++hits[*got == 9];
  }
  REQUIRE(static_cast<double>(failures) / runs <= delta);
  const int ok = runs - failures;
  REQUIRE(static_cast<double>(hits[0]) / ok == Catch::Approx(0.5).margin(0.03));
  REQUIRE(static_cast<double>(hits[1]) / ok == Catch::Approx(0.5).margin(0.03));
}

TEST_CASE("l0 extraction is uniform on an 8-element support") {
  const std::uint64_t support[8] = {3, 10, 17, 25, 33, 41, 50, 62};
  long counts[8] = {0};
  long total = 0;
  const int runs = 10000;
  for (int run = 0; run < runs; ++run) {
    L0Sampler s(64, 1e-2, 777000 + run);
    for (std::uint64_t e : support) s.update(e, +1);
    auto got = s.extract();
    if (!got) continue;
    for (int i = 0; i < 8; ++i)
      if (support[i] == *got) ++counts[i];
    ++total;
  }
  REQUIRE(total > runs * 95 / 100);
  const double expect = static_cast<double>(total) / 8.0;
  double chi2 = 0.0;
  for (long c : counts) chi2 += (c - expect) * (c - expect) / expect;
  REQUIRE(chi2 < 18.4753);  // chi-square df=7 at significance 0.01
}

TEST_CASE("l0 bank recovers a small support almost surely") {
  int whole = 0;
  const int runs = 200;
  for (int run = 0; run < runs; ++run) {
    L0SampleBank bank(1 << 20, 16, 1e-3, 555 + run);
    bank.update(10, +1);
    bank.update(20, +1);
    bank.update(30, +1);
    const L0SampleSet set = bank.extract();
    whole += set.indices == std::vector<std::uint64_t>{10, 20, 30};
  }
  REQUIRE(static_cast<double>(whole) / runs >= 0.95);
}

TEST_CASE("l0 bank of size one matches a single sampler") {
  L0SampleBank bank(256, 1, 1e-3, 9);
  for (std::uint64_t i = 0; i < 5; ++i) bank.update(i, +1);
  const L0SampleSet set = bank.extract();
  REQUIRE(set.achieved <= 1);
  if (set.achieved == 1) REQUIRE(set.indices[0] < 5);
}

TEST_CASE("fully cancelled stream yields no samples") {
  L0SampleBank bank(256, 8, 1e-3, 13);
  for (std::uint64_t i = 0; i < 20; ++i) bank.update(i, +1);
  for (std::uint64_t i = 0; i < 20; ++i) bank.update(i, -1);
  REQUIRE(bank.extract().indices.empty());
}

TEST_CASE("l0 word count stays within the budget shape") {
  for (std::uint64_t n : {1ULL << 10, 1ULL << 20, 1ULL << 40}) {
    for (double delta : {1e-1, 1e-3, 1e-6}) {
      L0Sampler s(n, delta, 1);
      const double log_n = std::ceil(std::log2(static_cast<double>(n)));
      const double log_d = std::ceil(std::log2(1.0 / delta));
      REQUIRE(static_cast<double>(s.words()) <= 4.0 * log_n * log_n * log_d);
    }
  }
}
