#pragma once

#include <cstdint>
#include <vector>

#include "satstream/rng.hpp"

namespace satstream {

// Classic single-pass reservoir sampling (algorithm R): after t offered
// items, the reservoir holds a uniform without-replacement sample of
// min(t, capacity) of them.
template <class T>
class ReservoirSampler {
 public:
  ReservoirSampler(std::size_t capacity, std::uint64_t seed)
      : capacity_(capacity), rng_(seed) {}

  void offer(const T& item) {
    ++seen_;
    if (items_.size() < capacity_) {
      items_.push_back(item);
      return;
    }
    const std::uint64_t slot = rng_.below(seen_);
    if (slot < capacity_) items_[slot] = item;
  }

  const std::vector<T>& items() const { return items_; }
  std::uint64_t seen() const { return seen_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::vector<T> items_;
  std::uint64_t seen_ = 0;
  Rng rng_;
};

}  // namespace satstream
