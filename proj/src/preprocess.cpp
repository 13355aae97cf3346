#include "syncorr/preprocess.hpp"

#include <utility>

#include "syncorr/error.hpp"

namespace syncorr {
namespace {

bool starts_with_any(std::string_view text, const std::vector<std::string>& prefixes) {
  for (const std::string& p : prefixes) {
    if (!p.empty() && text.starts_with(p)) return true;
  }
  return false;
}

std::optional<NodeId> copy_without_nulls(const ParseTree& tree, NodeId id,
                                         const NullMarkers& markers,
                                         TreeBuilder& out) {
  const Node& n = tree.node(id);
  std::vector<NodeId> kept;
  for (NodeId c : n.children) {
    const Node& child = tree.node(c);
    if (child.is_terminal) {
      if (markers.is_null(n.label, child.label)) continue;
      kept.push_back(out.terminal(child.label));
      continue;
    }
    if (auto copied = copy_without_nulls(tree, c, markers, out)) kept.push_back(*copied);
  }
  if (kept.empty()) return std::nullopt;
  return out.internal(n.label, std::move(kept));
}

std::string_view artificial_base(std::string_view label) {
  const auto bar = label.find(kArtificialMarker);
  return bar == std::string_view::npos || bar == 0 ? label : label.substr(0, bar);
}

std::string artificial_label(std::string_view base, const ParseTree& tree,
                             std::span<const NodeId> covered) {
  std::string label(base);
  label += kArtificialMarker;
  label += '<';
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (i > 0) label += '-';
    label += tree.label(covered[i]);
  }
  label += '>';
  return label;
}

NodeId copy_binarized(const ParseTree& tree, NodeId id, BinarizeDirection direction,
                      TreeBuilder& out) {
  const Node& n = tree.node(id);
  if (n.is_terminal) return out.terminal(n.label);
  std::vector<NodeId> kids;
  kids.reserve(n.children.size());
  for (NodeId c : n.children) kids.push_back(copy_binarized(tree, c, direction, out));
  if (kids.size() <= 2) return out.internal(n.label, std::move(kids));

  const std::string_view base = artificial_base(n.label);
  const std::span<const NodeId> source(n.children);
  const std::size_t k = kids.size();
  if (direction == BinarizeDirection::right) {
    // Innermost node first: covers the last two children.
    NodeId inner = out.internal(artificial_label(base, tree, source.subspan(k - 2)),
                                {kids[k - 2], kids[k - 1]});
    for (std::size_t i = k - 2; i-- > 1;) {
      inner = out.internal(artificial_label(base, tree, source.subspan(i)),
                           {kids[i], inner});
    }
    return out.internal(n.label, {kids[0], inner});
  }
  NodeId inner = out.internal(artificial_label(base, tree, source.first(2)),
                              {kids[0], kids[1]});
  for (std::size_t i = 2; i + 1 < k; ++i) {
    inner = out.internal(artificial_label(base, tree, source.first(i + 1)),
                         {inner, kids[i]});
  }
  return out.internal(n.label, {inner, kids[k - 1]});
}

NodeId copy_collapsed(const ParseTree& tree, NodeId id, TreeBuilder& out) {
  const Node& top = tree.node(id);
  if (top.is_terminal) return out.terminal(top.label);
  NodeId bottom = id;
  while (tree.children(bottom).size() == 1 &&
         !tree.is_terminal(tree.children(bottom).front())) {
    bottom = tree.children(bottom).front();
  }
  std::vector<NodeId> kids;
  for (NodeId c : tree.children(bottom)) kids.push_back(copy_collapsed(tree, c, out));
  return out.internal(top.label, std::move(kids));
}

}  // namespace

bool NullMarkers::is_null(std::string_view preterminal_label,
                          std::string_view token) const {
  return starts_with_any(preterminal_label, label_prefixes) ||
         starts_with_any(token, token_prefixes);
}

std::optional<ParseTree> remove_nulls(const ParseTree& tree, const NullMarkers& markers) {
  TreeBuilder out;
  if (tree.is_terminal(tree.root())) return tree;
  auto root = copy_without_nulls(tree, tree.root(), markers, out);
  if (!root) return std::nullopt;
  return std::move(out).finish(*root);
}

ParseTree binarize(const ParseTree& tree, BinarizeDirection direction) {
  TreeBuilder out;
  NodeId root = copy_binarized(tree, tree.root(), direction, out);
  return std::move(out).finish(root);
}

ParseTree collapse_unary(const ParseTree& tree) {
  TreeBuilder out;
  NodeId root = copy_collapsed(tree, tree.root(), out);
  return std::move(out).finish(root);
}

std::string base_label(std::string_view label) {
  std::string_view s = artificial_base(label);
  if (auto plus = s.find('+'); plus != std::string_view::npos && plus > 0) {
    s = s.substr(0, plus);
  }
  if (!s.starts_with('-')) {
    if (auto cut = s.find_first_of("-=;"); cut != std::string_view::npos && cut > 0) {
      s = s.substr(0, cut);
    }
  }
  return std::string(s);
}

ParseTree reduce_tags(const ParseTree& tree, const TagMap& map, UnmappedTags* unmapped) {
  std::vector<Node> nodes = tree.nodes();
  for (Node& n : nodes) {
    if (!n.is_terminal) n.label = map.map(base_label(n.label), unmapped);
  }
  return ParseTree(std::move(nodes), tree.root());
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::binarized: return "binarized";
    case Scheme::unbinarized: return "unbinarized";
    case Scheme::phrasal_only: return "phrasal_only";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "binarized") return Scheme::binarized;
  if (text == "unbinarized") return Scheme::unbinarized;
  if (text == "phrasal_only" || text == "phrasal-only") return Scheme::phrasal_only;
  throw Error("unknown scheme '" + std::string(text) +
              "' (expected binarized, unbinarized or phrasal_only)");
}

std::string_view to_string(BinarizeDirection direction) {
  return direction == BinarizeDirection::left ? "left" : "right";
}

BinarizeDirection parse_direction(std::string_view text) {
  if (text == "left") return BinarizeDirection::left;
  if (text == "right") return BinarizeDirection::right;
  throw Error("unknown binarization direction '" + std::string(text) + "'");
}

ParseTree preprocess_tree(const ParseTree& nulls_removed, const PreprocessOptions& options,
                          const TagMap& map, UnmappedTags* unmapped) {
  if (options.scheme == Scheme::unbinarized) {
    return reduce_tags(nulls_removed, map, unmapped);
  }
  return reduce_tags(collapse_unary(binarize(nulls_removed, options.direction)), map,
                     unmapped);
}

std::vector<ParseTree> preprocess_corpus(std::span<const ParseTree> trees,
                                         const PreprocessOptions& options,
                                         const TagMap& map, PreprocessReport* report) {
  PreprocessReport local;
  PreprocessReport& r = report != nullptr ? *report : local;
  std::vector<ParseTree> out;
  out.reserve(trees.size());
  for (const ParseTree& tree : trees) {
    ++r.input_trees;
    std::optional<ParseTree> cleaned = remove_nulls(tree, options.nulls);
    if (!cleaned) {
      ++r.dropped_empty;
      continue;
    }
    if (options.max_length > 0 && cleaned->terminals().size() > options.max_length) {
      ++r.dropped_long;
      continue;
    }
    out.push_back(preprocess_tree(*cleaned, options, map, &r.unmapped));
    ++r.kept;
  }
  return out;
}

}  // namespace syncorr
