#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "syncorr/tree.hpp"

namespace syncorr {

// Shape statistics of original (unpreprocessed) trees. Depth counts edges
// from the root to the deepest node, terminals included. Branching and the
// unary proportion range over internal nodes that are not preterminals;
// they are absent when a corpus has no such node. Standard deviations are
// population deviations.
struct TreeStats {
  std::size_t trees = 0;
  std::size_t internal_nodes = 0;
  double mean_depth = 0.0;
  double depth_sd = 0.0;
  std::optional<double> mean_branching;
  std::optional<double> branching_sd;
  std::optional<double> prop_unary;
};

// Throws on an empty corpus.
TreeStats tree_stats(std::span<const ParseTree> trees);

std::size_t tree_depth(const ParseTree& tree);

}  // namespace syncorr
