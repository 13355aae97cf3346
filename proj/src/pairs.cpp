#include "syncorr/pairs.hpp"

#include <algorithm>

#include "syncorr/error.hpp"

namespace syncorr {

std::string_view to_string(NodeSelection selection) {
  switch (selection) {
    case NodeSelection::pos_only: return "pos_only";
    case NodeSelection::pos_and_phrasal: return "pos_and_phrasal";
    case NodeSelection::phrasal_only: return "phrasal_only";
  }
  return "?";
}

const std::vector<std::pair<NodeId, std::uint32_t>>& NeighbourScan::scan(
    const ParseTree& tree, NodeId source, std::size_t max_distance) {
  if (mark_.size() < tree.size()) mark_.assign(tree.size(), 0);
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  found_.clear();
  // found_ doubles as the BFS queue; the source itself is skipped on output.
  found_.emplace_back(source, 0);
  mark_[source] = epoch_;
  for (std::size_t head = 0; head < found_.size(); ++head) {
    const auto [id, d] = found_[head];
    if (d == max_distance) continue;
    auto visit = [&](NodeId next) {
      if (mark_[next] == epoch_) return;
      mark_[next] = epoch_;
      found_.emplace_back(next, d + 1);
    };
    if (NodeId p = tree.parent(id); p != kNoNode) visit(p);
    for (NodeId c : tree.children(id)) visit(c);
  }
  found_.erase(found_.begin());
  return found_;
}

std::vector<NodePair> enumerate_pairs_seq(const Corpus& corpus, std::size_t r_seq) {
  if (r_seq == 0) throw Error("sequential distance must be at least 1");
  std::vector<NodePair> out;
  for_each_sequential_pair(corpus, r_seq, r_seq,
                           [&](std::size_t, const NodePair& p) { out.push_back(p); });
  return out;
}

std::vector<NodePair> enumerate_pairs_str(const Corpus& corpus, std::size_t r_str,
                                          NodeSelection selection) {
  if (r_str == 0) throw Error("structural distance must be at least 1");
  std::vector<NodePair> out;
  for_each_structural_pair(corpus, selection, r_str, r_str,
                           [&](std::size_t, const NodePair& p) { out.push_back(p); });
  return out;
}

}  // namespace syncorr
