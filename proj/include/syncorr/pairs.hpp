#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "syncorr/corpus.hpp"

namespace syncorr {

// Ordered pair of nodes from one tree; (a, b) and (b, a) are distinct.
struct NodePair {
  std::uint32_t tree;
  NodeId a;
  NodeId b;
  Symbol x0;
  Symbol x1;

  bool operator==(const NodePair&) const = default;
};

enum class NodeSelection { pos_only, pos_and_phrasal, phrasal_only };

std::string_view to_string(NodeSelection selection);

inline bool selected(NodeKind kind, NodeSelection selection) {
  switch (selection) {
    case NodeSelection::pos_only: return kind == NodeKind::preterminal;
    case NodeSelection::phrasal_only: return kind == NodeKind::phrasal;
    case NodeSelection::pos_and_phrasal: return kind != NodeKind::terminal;
  }
  return false;
}

// Nodes of `tree` within `max_distance` edges of `source`, with distances,
// in breadth-first order. Reuses internal buffers between calls.
class NeighbourScan {
 public:
  const std::vector<std::pair<NodeId, std::uint32_t>>& scan(const ParseTree& tree,
                                                            NodeId source,
                                                            std::size_t max_distance);

 private:
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<NodeId, std::uint32_t>> found_;
};

// Calls sink(r_seq, pair) for every ordered preterminal pair whose leaf
// positions differ by r_seq in [min_r, max_r].
template <class Sink>
void for_each_sequential_pair(const Corpus& corpus, std::size_t min_r, std::size_t max_r,
                              Sink&& sink) {
  if (min_r == 0) min_r = 1;
  for (std::uint32_t t = 0; t < corpus.size(); ++t) {
    const IndexedTree& ix = corpus.index(t);
    const auto& pos = ix.preterminals;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        const auto r = static_cast<std::size_t>(ix.position[pos[j]] - ix.position[pos[i]]);
        if (r < min_r) continue;
        if (r > max_r) break;
        sink(r, NodePair{t, pos[i], pos[j], ix.label[pos[i]], ix.label[pos[j]]});
        sink(r, NodePair{t, pos[j], pos[i], ix.label[pos[j]], ix.label[pos[i]]});
      }
    }
  }
}

// Calls sink(r_str, pair) for every ordered pair of selected nodes at
// structural distance r_str in [min_r, max_r].
template <class Sink>
void for_each_structural_pair(const Corpus& corpus, NodeSelection selection,
                              std::size_t min_r, std::size_t max_r, Sink&& sink) {
  if (min_r == 0) min_r = 1;
  NeighbourScan scan;
  for (std::uint32_t t = 0; t < corpus.size(); ++t) {
    const ParseTree& tree = corpus.tree(t);
    const IndexedTree& ix = corpus.index(t);
    for (NodeId a = 0; a < tree.size(); ++a) {
      if (!selected(ix.kind[a], selection)) continue;
      for (const auto& [b, r] : scan.scan(tree, a, max_r)) {
        if (r < min_r || !selected(ix.kind[b], selection)) continue;
        sink(static_cast<std::size_t>(r), NodePair{t, a, b, ix.label[a], ix.label[b]});
      }
    }
  }
}

// True when one node of a pair at structural distance r_str dominates the
// other, i.e. the path between them is a single vertical chain.
inline bool on_one_branch(const IndexedTree& ix, NodeId a, NodeId b, std::size_t r_str) {
  const std::uint32_t da = ix.depth[a];
  const std::uint32_t db = ix.depth[b];
  return r_str == (da > db ? da - db : db - da);
}

std::vector<NodePair> enumerate_pairs_seq(const Corpus& corpus, std::size_t r_seq);
std::vector<NodePair> enumerate_pairs_str(const Corpus& corpus, std::size_t r_str,
                                          NodeSelection selection);

}  // namespace syncorr
