#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "syncorr/bracketed.hpp"
#include "syncorr/rng.hpp"
#include "syncorr/tree.hpp"

namespace testing {

inline syncorr::ParseTree tree(const std::string& text) { return syncorr::parse_tree(text); }

// Random well-formed tree with at most `max_nodes` nodes. Internal nodes get
// 1..3 children; leaves are preterminal/terminal pairs.
inline syncorr::ParseTree random_tree(syncorr::Rng& rng, std::size_t max_nodes) {
  using namespace syncorr;
  static const char* kLabels[] = {"S", "NP", "VP", "PP", "NN", "VB", "DT"};
  TreeBuilder b;
  std::size_t budget = max_nodes;
  // Reserve two nodes (preterminal + terminal) per open subtree.
  auto build = [&](auto&& self, std::size_t depth) -> NodeId {
    const bool leaf = budget < 5 || depth > 5 || rng.below(3) == 0;
    if (leaf) {
      budget -= 2;
      const NodeId t = b.terminal("w" + std::to_string(rng.below(5)));
      return b.internal(kLabels[4 + rng.below(3)], {t});
    }
    budget -= 1;
    const std::size_t arity = 1 + rng.below(3);
    std::vector<NodeId> kids;
    for (std::size_t i = 0; i < arity; ++i) {
      if (i > 0 && budget < 2) break;
      kids.push_back(self(self, depth + 1));
    }
    return b.internal(kLabels[rng.below(4)], kids);
  };
  const NodeId root = build(build, 0);
  return std::move(b).finish(root);
}

// Complete binary tree of the given depth over preterminals.
inline syncorr::ParseTree complete_binary(std::size_t depth) {
  using namespace syncorr;
  TreeBuilder b;
  std::size_t leaf = 0;
  auto build = [&](auto&& self, std::size_t d) -> NodeId {
    if (d == depth) {
      const NodeId t = b.terminal("w" + std::to_string(leaf++));
      return b.internal("NN", {t});
    }
    const NodeId l = self(self, d + 1);
    const NodeId r = self(self, d + 1);
    return b.internal("NP", {l, r});
  };
  const NodeId root = build(build, 0);
  return std::move(b).finish(root);
}

// Right-branching chain (P w0 (P w1 (P w2 ... (P wn-2 wn-1)))).
inline syncorr::ParseTree right_chain(std::size_t leaves) {
  using namespace syncorr;
  TreeBuilder b;
  auto pre = [&](std::size_t i) { return b.internal("NN", {b.terminal("w" + std::to_string(i))}); };
  NodeId tail = pre(leaves - 1);
  for (std::size_t i = leaves - 1; i-- > 0;) tail = b.internal("NP", {pre(i), tail});
  return std::move(b).finish(tail);
}

// All-pairs edge distances by breadth-first search from every node.
inline std::vector<std::vector<std::size_t>> bfs_distances(const syncorr::ParseTree& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (syncorr::NodeId i = 0; i < n; ++i) {
    for (syncorr::NodeId c : t.children(i)) {
      adj[i].push_back(c);
      adj[c].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, SIZE_MAX));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> q{s};
    dist[s][s] = 0;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : adj[u]) {
        if (dist[s][v] == SIZE_MAX) {
          dist[s][v] = dist[s][u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return dist;
}

}  // namespace testing
