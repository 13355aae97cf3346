#include "syncorr/tree_stats.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "syncorr/error.hpp"

namespace syncorr {
namespace {

// Welford accumulator.
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double sd() const { return n_ == 0 ? 0.0 : std::sqrt(m2_ / static_cast<double>(n_)); }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

std::size_t tree_depth(const ParseTree& tree) {
  std::size_t deepest = 0;
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, depth);
    for (NodeId c : tree.children(id)) stack.emplace_back(c, depth + 1);
  }
  return deepest;
}

TreeStats tree_stats(std::span<const ParseTree> trees) {
  if (trees.empty()) throw Error("tree statistics: empty corpus");
  Moments depth;
  Moments branching;
  std::size_t unary = 0;
  for (const ParseTree& tree : trees) {
    depth.add(static_cast<double>(tree_depth(tree)));
    for (NodeId id = 0; id < tree.size(); ++id) {
      if (tree.is_terminal(id) || tree.is_preterminal(id)) continue;
      const std::size_t k = tree.children(id).size();
      branching.add(static_cast<double>(k));
      if (k == 1) ++unary;
    }
  }
  TreeStats stats;
  stats.trees = trees.size();
  stats.internal_nodes = branching.count();
  stats.mean_depth = depth.mean();
  stats.depth_sd = depth.sd();
  if (branching.count() > 0) {
    stats.mean_branching = branching.mean();
    stats.branching_sd = branching.sd();
    stats.prop_unary =
        static_cast<double>(unary) / static_cast<double>(branching.count());
  }
  return stats;
}

}  // namespace syncorr
