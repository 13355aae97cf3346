#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <utility>

#include "syncorr/corpus.hpp"

namespace syncorr {

// Joint counts of ordered preterminal pairs over (r_str, r_seq).
class DistanceHistogram {
 public:
  using Key = std::pair<std::uint32_t, std::uint32_t>;

  void add(std::uint32_t r_str, std::uint32_t r_seq, std::uint64_t count = 1);
  void merge(const DistanceHistogram& other);

  std::uint64_t count(std::uint32_t r_str, std::uint32_t r_seq) const;
  // Sum over r_seq at fixed r_str.
  std::uint64_t marginal(std::uint32_t r_str) const;
  std::uint64_t total() const;
  bool empty() const { return counts_.empty(); }

  const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  bool operator==(const DistanceHistogram&) const = default;

 private:
  std::map<Key, std::uint64_t> counts_;
};

DistanceHistogram distance_joint_histogram(const Corpus& corpus);

// Count-weighted mean r_seq for every r_str present.
std::map<std::uint32_t, double> mean_seq_distance(const DistanceHistogram& hist);

// "r_str,r_seq,count" rows sorted by (r_str, r_seq).
void write_histogram_csv(std::ostream& out, const DistanceHistogram& hist);

}  // namespace syncorr
