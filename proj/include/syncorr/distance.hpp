#pragma once

#include <cstddef>
#include <cstdint>

#include "syncorr/corpus.hpp"
#include "syncorr/tree.hpp"

namespace syncorr {

// |position(a) - position(b)| over the leaf indices of the two preterminals'
// terminal children. Throws if either node is not a preterminal.
std::size_t sequential_distance(const ParseTree& tree, NodeId a, NodeId b);

// Edge count of the path a -> lowest common ancestor -> b.
std::size_t structural_distance(const ParseTree& tree, NodeId a, NodeId b);

struct NodeRef {
  std::uint32_t tree;
  NodeId node;
};

// Corpus-level forms; nodes from different trees are an error.
std::size_t sequential_distance(const Corpus& corpus, NodeRef a, NodeRef b);
std::size_t structural_distance(const Corpus& corpus, NodeRef a, NodeRef b);

// Same quantity over precomputed parent/depth arrays.
std::size_t structural_distance(const IndexedTree& tree, NodeId a, NodeId b);

}  // namespace syncorr
