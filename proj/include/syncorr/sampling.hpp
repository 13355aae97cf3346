#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "syncorr/pairs.hpp"
#include "syncorr/rng.hpp"

namespace syncorr {

// Uniform sample without replacement of at most `capacity` items from a
// stream of unknown length (Algorithm R). take() returns the sample in
// shuffled order, so any prefix is itself a uniform sample.
template <class T>
class Reservoir {
 public:
  Reservoir(std::size_t capacity, std::uint64_t seed) : capacity_(capacity), rng_(seed) {}

  void offer(const T& item) {
    if (items_.size() < capacity_) {
      items_.push_back(item);
    } else {
      const std::uint64_t j = rng_.below(seen_ + 1);
      if (j < capacity_) items_[j] = item;
    }
    ++seen_;
  }

  std::size_t seen() const { return seen_; }
  std::size_t capacity() const { return capacity_; }

  std::vector<T> take() && {
    rng_.shuffle(std::span<T>(items_));
    return std::move(items_);
  }

 private:
  std::size_t capacity_;
  Rng rng_;
  std::vector<T> items_;
  std::uint64_t seen_ = 0;
};

struct PairSample {
  std::vector<NodePair> pairs;
  std::size_t requested = 0;
  std::size_t population = 0;

  bool shortfall() const { return population < requested; }
};

// Throws if `population` is empty; `distance` names the distance in the
// message (e.g. "r_str=7").
PairSample sample_pairs(std::span<const NodePair> population, std::size_t n_data,
                        std::uint64_t seed, std::string_view distance);

}  // namespace syncorr
