#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syncorr/tag_map.hpp"
#include "syncorr/tree.hpp"

namespace syncorr {

// Separates a parent's base label from the artificial-node suffix that
// binarization adds, as in "S|<B-C>".
inline constexpr char kArtificialMarker = '|';

// Which leaves count as phonologically null. A terminal is null when its
// token starts with one of `token_prefixes` or its preterminal's label
// starts with one of `label_prefixes`.
struct NullMarkers {
  std::vector<std::string> label_prefixes{"-NONE-"};
  std::vector<std::string> token_prefixes;

  bool is_null(std::string_view preterminal_label, std::string_view token) const;
};

// Deletes null leaves and every internal node left without children.
// Returns nullopt when nothing survives; the caller drops the sentence.
std::optional<ParseTree> remove_nulls(const ParseTree& tree,
                                      const NullMarkers& markers);

enum class BinarizeDirection { left, right };

// Replaces every node with more than two children by a chain of binary
// nodes. `right` groups from the right (A (X B C)), `left` from the left
// ((X A B) C). Introduced nodes are labeled "<base>|<c1-c2-...>" listing
// the children they cover.
ParseTree binarize(const ParseTree& tree, BinarizeDirection direction);

// Collapses each chain of unary internal nodes into one node that keeps
// the topmost label. Chains ending in a preterminal become a preterminal.
ParseTree collapse_unary(const ParseTree& tree);

// Label used for tag lookup: drops the artificial-node suffix, takes the
// first segment of "+"-joined labels, and strips function tags introduced
// by '-', '=' or ';' unless the label itself starts with '-' (-LRB-).
std::string base_label(std::string_view label);

// Maps every internal label through `map` after base_label; terminals are
// left alone. Shape is preserved exactly.
ParseTree reduce_tags(const ParseTree& tree, const TagMap& map,
                      UnmappedTags* unmapped = nullptr);

enum class Scheme { binarized, unbinarized, phrasal_only };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);
std::string_view to_string(BinarizeDirection direction);
BinarizeDirection parse_direction(std::string_view text);

struct PreprocessOptions {
  NullMarkers nulls;
  BinarizeDirection direction = BinarizeDirection::right;
  // Sentences with more words than this are dropped; 0 disables.
  std::size_t max_length = 40;
  Scheme scheme = Scheme::binarized;
};

struct PreprocessReport {
  std::size_t input_trees = 0;
  std::size_t dropped_empty = 0;
  std::size_t dropped_long = 0;
  std::size_t kept = 0;
  UnmappedTags unmapped;
};

// Null removal, length filter, then (unless the scheme is unbinarized)
// binarization and unary collapse, then tag reduction.
ParseTree preprocess_tree(const ParseTree& nulls_removed,
                          const PreprocessOptions& options, const TagMap& map,
                          UnmappedTags* unmapped = nullptr);

std::vector<ParseTree> preprocess_corpus(std::span<const ParseTree> trees,
                                         const PreprocessOptions& options,
                                         const TagMap& map,
                                         PreprocessReport* report = nullptr);

}  // namespace syncorr
