#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "syncorr/tree.hpp"

namespace syncorr {

struct ReadOptions {
  // When false, a top-level group without a label, as in Penn's "( (S ...) )",
  // is read as a wrapper whose children are separate trees. When true it is
  // rejected as an empty label.
  bool strict = false;
};

// Reads zero or more Penn-style bracketed trees. Throws ParseError with the
// line and column of the offending bracket.
std::vector<ParseTree> parse_bracketed(std::string_view text,
                                       const ReadOptions& options = {});

// Exactly one tree; anything else is an error.
ParseTree parse_tree(std::string_view text, const ReadOptions& options = {});

std::vector<ParseTree> read_treebank(const std::filesystem::path& path,
                                     const ReadOptions& options = {});

// Canonical single-space form, e.g. "(S (NP (NN dog)))".
std::string write_bracketed(const ParseTree& tree);

}  // namespace syncorr
