#include "syncorr/tree.hpp"

#include <utility>

#include "syncorr/error.hpp"

namespace syncorr {

ParseTree::ParseTree(std::vector<Node> nodes, NodeId root)
    : nodes_(std::move(nodes)), parents_(nodes_.size(), kNoNode), root_(root) {
  if (root_ >= nodes_.size()) throw Error("parse tree: root index out of range");
  std::vector<bool> seen(nodes_.size(), false);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (n.label.empty()) throw Error("parse tree: empty label");
    if (n.is_terminal && !n.children.empty()) {
      throw Error("parse tree: terminal '" + n.label + "' has children");
    }
    if (!n.is_terminal && n.children.empty()) {
      throw Error("parse tree: internal node '" + n.label + "' has no children");
    }
    for (NodeId c : n.children) {
      if (c >= nodes_.size()) throw Error("parse tree: child index out of range");
      if (c == root_ || parents_[c] != kNoNode) {
        throw Error("parse tree: node has more than one parent");
      }
      parents_[c] = id;
    }
  }
  // Reachability from the root rules out detached cycles.
  std::vector<NodeId> stack{root_};
  std::size_t reached = 0;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) throw Error("parse tree: cycle");
    seen[id] = true;
    ++reached;
    for (NodeId c : nodes_[id].children) stack.push_back(c);
  }
  if (reached != nodes_.size()) throw Error("parse tree: unreachable nodes");
}

bool ParseTree::is_preterminal(NodeId id) const {
  const Node& n = node(id);
  return !n.is_terminal && n.children.size() == 1 &&
         nodes_[n.children.front()].is_terminal;
}

std::vector<NodeId> ParseTree::terminals() const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (n.is_terminal) {
      out.push_back(id);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

std::vector<NodeId> ParseTree::preterminals() const {
  std::vector<NodeId> out;
  for (NodeId t : terminals()) {
    NodeId p = parents_[t];
    if (p != kNoNode && is_preterminal(p)) out.push_back(p);
  }
  return out;
}

std::vector<std::string> ParseTree::words() const {
  std::vector<std::string> out;
  for (NodeId t : terminals()) out.push_back(nodes_[t].label);
  return out;
}

std::size_t ParseTree::internal_count() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += n.is_terminal ? 0 : 1;
  return count;
}

bool ParseTree::operator==(const ParseTree& other) const {
  if (size() != other.size()) return false;
  std::vector<std::pair<NodeId, NodeId>> stack{{root_, other.root_}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const Node& x = nodes_[a];
    const Node& y = other.nodes_[b];
    if (x.label != y.label || x.is_terminal != y.is_terminal ||
        x.children.size() != y.children.size()) {
      return false;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
      stack.emplace_back(x.children[i], y.children[i]);
    }
  }
  return true;
}

NodeId TreeBuilder::terminal(std::string token) {
  nodes_.push_back(Node{std::move(token), {}, true});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TreeBuilder::internal(std::string label, std::vector<NodeId> children) {
  nodes_.push_back(Node{std::move(label), std::move(children), false});
  return static_cast<NodeId>(nodes_.size() - 1);
}

ParseTree TreeBuilder::finish(NodeId root) && {
  return ParseTree(std::move(nodes_), root);
}

}  // namespace syncorr
