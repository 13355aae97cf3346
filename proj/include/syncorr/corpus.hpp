#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syncorr/tree.hpp"

namespace syncorr {

using Symbol = std::uint32_t;

// Interns category labels to dense ids in first-seen order.
class SymbolTable {
 public:
  Symbol intern(std::string_view name);
  std::optional<Symbol> find(std::string_view name) const;
  const std::string& name(Symbol s) const { return names_.at(s); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> ids_;
};

enum class NodeKind : std::uint8_t { terminal, preterminal, phrasal };

// Per-tree lookup arrays shared by the distance and pair routines.
struct IndexedTree {
  std::vector<NodeId> parent;
  std::vector<std::uint32_t> depth;
  std::vector<NodeKind> kind;
  // Interned label for internal nodes; terminals carry the terminal symbol.
  std::vector<Symbol> label;
  // Leaf position of a preterminal's terminal child, -1 elsewhere.
  std::vector<std::int32_t> position;
  // Preterminals in surface order.
  std::vector<NodeId> preterminals;
};

// A set of preprocessed trees plus the indexes used for enumeration.
// Pairs never cross trees, so trees are addressed by their position here.
class Corpus {
 public:
  // Symbol used for terminal children (CFIB child labels).
  static constexpr std::string_view kTerminalSymbol = "<t>";

  explicit Corpus(std::vector<ParseTree> trees);

  std::size_t size() const { return trees_.size(); }
  const ParseTree& tree(std::size_t i) const { return trees_.at(i); }
  const std::vector<ParseTree>& trees() const { return trees_; }
  const IndexedTree& index(std::size_t i) const { return indexes_.at(i); }
  const SymbolTable& symbols() const { return symbols_; }
  Symbol terminal_symbol() const { return terminal_symbol_; }

 private:
  std::vector<ParseTree> trees_;
  std::vector<IndexedTree> indexes_;
  SymbolTable symbols_;
  Symbol terminal_symbol_;
};

IndexedTree index_tree(const ParseTree& tree, SymbolTable& symbols, Symbol terminal);

}  // namespace syncorr
