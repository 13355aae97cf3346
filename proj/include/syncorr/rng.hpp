#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace syncorr {

// SplitMix64 finalizer applied to seed ^ key; used to derive independent
// stream seeds such as (run seed, distance) or (run seed, attempt index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key1,
                       std::uint64_t key2);

// Portable random source: raw std::mt19937_64 output mapped by fixed
// arithmetic, so a seed reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace syncorr
