#include "syncorr/corpus.hpp"

#include <utility>

namespace syncorr {

Symbol SymbolTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const Symbol id = static_cast<Symbol>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<Symbol> SymbolTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

IndexedTree index_tree(const ParseTree& tree, SymbolTable& symbols, Symbol terminal) {
  const std::size_t n = tree.size();
  IndexedTree ix;
  ix.parent.resize(n);
  ix.depth.assign(n, 0);
  ix.kind.resize(n);
  ix.label.resize(n);
  ix.position.assign(n, -1);
  for (NodeId id = 0; id < n; ++id) {
    ix.parent[id] = tree.parent(id);
    if (tree.is_terminal(id)) {
      ix.kind[id] = NodeKind::terminal;
      ix.label[id] = terminal;
    } else {
      ix.kind[id] = tree.is_preterminal(id) ? NodeKind::preterminal : NodeKind::phrasal;
      ix.label[id] = symbols.intern(tree.label(id));
    }
  }
  // Preorder from the root: parents are assigned a depth before children.
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    for (NodeId c : tree.children(id)) {
      ix.depth[c] = ix.depth[id] + 1;
      stack.push_back(c);
    }
  }
  std::int32_t position = 0;
  for (NodeId t : tree.terminals()) {
    NodeId p = tree.parent(t);
    if (p != kNoNode && ix.kind[p] == NodeKind::preterminal) {
      ix.position[p] = position;
      ix.preterminals.push_back(p);
    }
    ++position;
  }
  return ix;
}

Corpus::Corpus(std::vector<ParseTree> trees) : trees_(std::move(trees)) {
  terminal_symbol_ = symbols_.intern(kTerminalSymbol);
  indexes_.reserve(trees_.size());
  for (const ParseTree& t : trees_) {
    indexes_.push_back(index_tree(t, symbols_, terminal_symbol_));
  }
}

}  // namespace syncorr
