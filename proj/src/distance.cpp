#include "syncorr/distance.hpp"

#include <string>

#include "syncorr/error.hpp"

namespace syncorr {
namespace {

void check_node(const ParseTree& tree, NodeId id) {
  if (id >= tree.size()) {
    throw Error("node index " + std::to_string(id) + " out of range for a tree of " +
                std::to_string(tree.size()) + " nodes");
  }
}

std::size_t leaf_position(const ParseTree& tree, NodeId preterminal) {
  const NodeId leaf = tree.children(preterminal).front();
  std::size_t position = 0;
  for (NodeId t : tree.terminals()) {
    if (t == leaf) return position;
    ++position;
  }
  throw Error("terminal not reachable from the root");
}

void check_same_tree(NodeRef a, NodeRef b) {
  if (a.tree != b.tree) {
    throw Error("distance between nodes of different trees (" + std::to_string(a.tree) +
                " and " + std::to_string(b.tree) + ")");
  }
}

}  // namespace

std::size_t sequential_distance(const ParseTree& tree, NodeId a, NodeId b) {
  check_node(tree, a);
  check_node(tree, b);
  if (!tree.is_preterminal(a) || !tree.is_preterminal(b)) {
    throw Error("sequential distance is defined between preterminal nodes only");
  }
  const std::size_t pa = leaf_position(tree, a);
  const std::size_t pb = leaf_position(tree, b);
  return pa > pb ? pa - pb : pb - pa;
}

std::size_t structural_distance(const ParseTree& tree, NodeId a, NodeId b) {
  check_node(tree, a);
  check_node(tree, b);
  auto depth_of = [&](NodeId id) {
    std::size_t d = 0;
    for (NodeId p = tree.parent(id); p != kNoNode; p = tree.parent(p)) ++d;
    return d;
  };
  std::size_t da = depth_of(a);
  std::size_t db = depth_of(b);
  std::size_t steps = 0;
  while (da > db) {
    a = tree.parent(a);
    --da;
    ++steps;
  }
  while (db > da) {
    b = tree.parent(b);
    --db;
    ++steps;
  }
  while (a != b) {
    a = tree.parent(a);
    b = tree.parent(b);
    steps += 2;
  }
  return steps;
}

std::size_t structural_distance(const IndexedTree& tree, NodeId a, NodeId b) {
  std::size_t steps = 0;
  while (tree.depth[a] > tree.depth[b]) {
    a = tree.parent[a];
    ++steps;
  }
  while (tree.depth[b] > tree.depth[a]) {
    b = tree.parent[b];
    ++steps;
  }
  while (a != b) {
    a = tree.parent[a];
    b = tree.parent[b];
    steps += 2;
  }
  return steps;
}

std::size_t sequential_distance(const Corpus& corpus, NodeRef a, NodeRef b) {
  check_same_tree(a, b);
  return sequential_distance(corpus.tree(a.tree), a.node, b.node);
}

std::size_t structural_distance(const Corpus& corpus, NodeRef a, NodeRef b) {
  check_same_tree(a, b);
  return structural_distance(corpus.tree(a.tree), a.node, b.node);
}

}  // namespace syncorr
