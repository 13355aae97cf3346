#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace syncorr {

// Frequency table over 64-bit symbol keys. Pairs of 32-bit symbols are
// packed with pack(); larger tuples are interned to dense ids first.
class CountTable {
 public:
  static constexpr std::uint64_t pack(std::uint32_t hi, std::uint32_t lo) {
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
  }
  static constexpr std::uint32_t high(std::uint64_t key) {
    return static_cast<std::uint32_t>(key >> 32);
  }
  static constexpr std::uint32_t low(std::uint64_t key) {
    return static_cast<std::uint32_t>(key);
  }

  void add(std::uint64_t key, std::uint64_t n = 1);
  void merge(const CountTable& other);

  std::uint64_t count(std::uint64_t key) const;
  std::uint64_t total() const { return total_; }
  // Number of keys with a positive count.
  std::size_t support() const { return counts_.size(); }

  // Positive counts in ascending order; estimators sum over this so the
  // result does not depend on insertion order.
  std::vector<std::uint64_t> sorted_counts() const;

  const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }

  bool operator==(const CountTable& other) const {
    return total_ == other.total_ && counts_ == other.counts_;
  }

 private:
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace syncorr
