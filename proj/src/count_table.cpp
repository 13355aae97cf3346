#include "syncorr/count_table.hpp"

#include <algorithm>

namespace syncorr {

void CountTable::add(std::uint64_t key, std::uint64_t n) {
  if (n == 0) return;
  counts_[key] += n;
  total_ += n;
}

void CountTable::merge(const CountTable& other) {
  for (const auto& [key, n] : other.counts_) add(key, n);
}

std::uint64_t CountTable::count(std::uint64_t key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::uint64_t> CountTable::sorted_counts() const {
  std::vector<std::uint64_t> out;
  out.reserve(counts_.size());
  for (const auto& [key, n] : counts_) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace syncorr
