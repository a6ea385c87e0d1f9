#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <set>
#include <string>

#include "satstream/errors.hpp"
#include "satstream/rng.hpp"

namespace satstream {

// Mergeable bottom-k distinct-count sketch. Keeps the k smallest hash values
// of the elements seen; below k distinct elements the count is exact, above
// it the k-th smallest hash yields the k*H/h_(k) estimate (H = 2^64). Two
// sketches merge iff they share hash seed and k.
class F0Sketch {
 public:
  F0Sketch(std::size_t k, std::uint64_t hash_seed, double delta = 1e-3)
      : k_(k), seed_(hash_seed), delta_(delta) {
    if (k_ == 0) throw ConfigError("F0 sketch requires k >= 1");
  }

  // Retention size for relative error eps at failure probability delta.
  static std::size_t k_for(double eps, double delta) {
    if (!(eps > 0.0) || !(delta > 0.0))
      throw ConfigError("F0 sketch needs eps > 0 and delta > 0");
    return static_cast<std::size_t>(
        std::ceil(3.0 * std::log(2.0 / delta) / (eps * eps)));
  }

  void update(std::uint64_t element) {
    const std::uint64_t h = splitmix64(element ^ splitmix64(seed_));
    if (min_hashes_.size() < k_) {
      min_hashes_.insert(h);
      return;
    }
    auto last = std::prev(min_hashes_.end());
    if (h < *last && min_hashes_.insert(h).second) min_hashes_.erase(std::prev(min_hashes_.end()));
  }

  double estimate() const {
    if (min_hashes_.size() < k_)
      return static_cast<double>(min_hashes_.size());
    const long double kth = static_cast<long double>(*min_hashes_.rbegin()) + 1.0L;
    const long double range = 18446744073709551616.0L;  // 2^64
    return static_cast<double>(static_cast<long double>(k_) * range / kth);
  }

  friend F0Sketch merge(const F0Sketch& a, const F0Sketch& b) {
    if (a.k_ != b.k_ || a.seed_ != b.seed_) throw SeedMismatch();
    F0Sketch out = a;
    out.merge_in(b);
    return out;
  }

  void merge_in(const F0Sketch& other) {
    if (k_ != other.k_ || seed_ != other.seed_) throw SeedMismatch();
    for (std::uint64_t h : other.min_hashes_) {
      min_hashes_.insert(h);
      if (min_hashes_.size() > k_)
        min_hashes_.erase(std::prev(min_hashes_.end()));
    }
  }

  std::size_t k() const { return k_; }
  std::uint64_t seed() const { return seed_; }
  double delta() const { return delta_; }
  std::size_t retained() const { return min_hashes_.size(); }
  std::size_t words() const { return min_hashes_.size() + 4; }

  // Framed binary blob: magic, version, k, seed, delta, payload.
  std::string serialize() const {
    std::string out;
    auto put64 = [&out](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
    };
    out += "F0SK";
    put64(kVersion);
    put64(k_);
    put64(seed_);
    std::uint64_t dbits;
    std::memcpy(&dbits, &delta_, sizeof dbits);
    put64(dbits);
    put64(min_hashes_.size());
    for (std::uint64_t h : min_hashes_) put64(h);
    return out;
  }

  static F0Sketch deserialize(const std::string& blob) {
    std::size_t pos = 0;
    auto get64 = [&blob, &pos]() {
      if (pos + 8 > blob.size()) throw ConfigError("truncated F0 sketch blob");
      std::uint64_t v = 0;
      for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(blob[pos + i]))
             << (8 * i);
      pos += 8;
      return v;
    };
    if (blob.size() < 4 || blob.compare(0, 4, "F0SK") != 0)
      throw ConfigError("bad F0 sketch magic");
    pos = 4;
    if (get64() != kVersion) throw ConfigError("unsupported F0 sketch version");
    const std::uint64_t k = get64();
    const std::uint64_t seed = get64();
    const std::uint64_t dbits = get64();
    double delta;
    std::memcpy(&delta, &dbits, sizeof delta);
    F0Sketch sk(k, seed, delta);
    const std::uint64_t count = get64();
    for (std::uint64_t i = 0; i < count; ++i) sk.min_hashes_.insert(get64());
    return sk;
  }

 private:
  static constexpr std::uint64_t kVersion = 1;

  std::size_t k_;
  std::uint64_t seed_;
  double delta_;
  std::set<std::uint64_t> min_hashes_;
};

}  // namespace satstream
