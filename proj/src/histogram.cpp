#include "syncorr/histogram.hpp"

#include <cstdlib>

#include "syncorr/distance.hpp"

namespace syncorr {

void DistanceHistogram::add(std::uint32_t r_str, std::uint32_t r_seq, std::uint64_t count) {
  if (count == 0) return;
  counts_[{r_str, r_seq}] += count;
}

void DistanceHistogram::merge(const DistanceHistogram& other) {
  for (const auto& [key, n] : other.counts_) counts_[key] += n;
}

std::uint64_t DistanceHistogram::count(std::uint32_t r_str, std::uint32_t r_seq) const {
  auto it = counts_.find({r_str, r_seq});
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t DistanceHistogram::marginal(std::uint32_t r_str) const {
  std::uint64_t sum = 0;
  for (auto it = counts_.lower_bound({r_str, 0}); it != counts_.end() && it->first.first == r_str;
       ++it) {
    sum += it->second;
  }
  return sum;
}

std::uint64_t DistanceHistogram::total() const {
  std::uint64_t sum = 0;
  for (const auto& [key, n] : counts_) sum += n;
  return sum;
}

DistanceHistogram distance_joint_histogram(const Corpus& corpus) {
  DistanceHistogram hist;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const IndexedTree& ix = corpus.index(t);
    const auto& pos = ix.preterminals;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        const auto r_str = static_cast<std::uint32_t>(structural_distance(ix, pos[i], pos[j]));
        const auto r_seq =
            static_cast<std::uint32_t>(std::abs(ix.position[pos[j]] - ix.position[pos[i]]));
        hist.add(r_str, r_seq, 2);
      }
    }
  }
  return hist;
}

std::map<std::uint32_t, double> mean_seq_distance(const DistanceHistogram& hist) {
  std::map<std::uint32_t, std::pair<double, double>> acc;
  for (const auto& [key, n] : hist.counts()) {
    auto& [weighted, total] = acc[key.first];
    weighted += static_cast<double>(key.second) * static_cast<double>(n);
    total += static_cast<double>(n);
  }
  std::map<std::uint32_t, double> out;
  for (const auto& [r_str, wt] : acc) out[r_str] = wt.first / wt.second;
  return out;
}

void write_histogram_csv(std::ostream& out, const DistanceHistogram& hist) {
  out << "r_str,r_seq,count\n";
  for (const auto& [key, n] : hist.counts()) {
    out << key.first << ',' << key.second << ',' << n << '\n';
  }
}

}  // namespace syncorr
