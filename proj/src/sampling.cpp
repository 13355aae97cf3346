#include "syncorr/sampling.hpp"

#include <string>

#include "syncorr/error.hpp"

namespace syncorr {

PairSample sample_pairs(std::span<const NodePair> population, std::size_t n_data,
                        std::uint64_t seed, std::string_view distance) {
  if (n_data == 0) throw Error("n_data must be at least 1");
  if (population.empty()) {
    throw Error("no pairs at " + std::string(distance));
  }
  Reservoir<NodePair> reservoir(n_data, seed);
  for (const NodePair& p : population) reservoir.offer(p);
  PairSample out;
  out.requested = n_data;
  out.population = reservoir.seen();
  out.pairs = std::move(reservoir).take();
  return out;
}

}  // namespace syncorr
