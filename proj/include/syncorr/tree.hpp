#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace syncorr {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct Node {
  // Category for internal nodes, surface token for terminals.
  std::string label;
  std::vector<NodeId> children;
  bool is_terminal = false;

  bool operator==(const Node&) const = default;
};

// Rooted, ordered, labeled tree stored as an index-addressed node array.
//
// The constructor validates the shape: exactly one root, every other node
// reachable with exactly one parent, terminals childless, internal nodes
// non-empty, labels non-empty. Trees are immutable once built; the
// preprocessing transforms return new trees.
class ParseTree {
 public:
  ParseTree(std::vector<Node> nodes, NodeId root);

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::string& label(NodeId id) const { return node(id).label; }
  const std::vector<NodeId>& children(NodeId id) const {
    return node(id).children;
  }
  NodeId parent(NodeId id) const { return parents_.at(id); }

  bool is_terminal(NodeId id) const { return node(id).is_terminal; }
  // Internal node with exactly one child, that child a terminal.
  bool is_preterminal(NodeId id) const;

  // Terminal node ids in surface (left-to-right) order.
  std::vector<NodeId> terminals() const;
  // Preterminal node ids in surface order.
  std::vector<NodeId> preterminals() const;
  std::vector<std::string> words() const;

  std::size_t internal_count() const;

  // Structural equality from the root down; storage order is irrelevant.
  bool operator==(const ParseTree& other) const;

 private:
  std::vector<Node> nodes_;
  std::vector<NodeId> parents_;
  NodeId root_;
};

// Incremental construction helper used by the transforms and the readers.
class TreeBuilder {
 public:
  NodeId terminal(std::string token);
  NodeId internal(std::string label, std::vector<NodeId> children);
  ParseTree finish(NodeId root) &&;

 private:
  std::vector<Node> nodes_;
};

}  // namespace syncorr
