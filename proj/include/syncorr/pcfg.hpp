#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syncorr/rng.hpp"
#include "syncorr/tree.hpp"

namespace syncorr {

struct Rule {
  std::string lhs;
  // Categories, or the terminal marker for a preterminal emission.
  std::vector<std::string> rhs;
  double probability = 0.0;

  bool operator==(const Rule&) const = default;
};

struct RootWeight {
  std::string label;
  double probability = 0.0;

  bool operator==(const RootWeight&) const = default;
};

class Pcfg {
 public:
  static constexpr std::string_view kTerminal = "<t>";

  // Validates: probabilities in (0, 1], per-lhs and root sums equal to 1
  // within 1e-9, every rhs category and root has rules, no duplicate rules.
  Pcfg(std::vector<Rule> rules, std::vector<RootWeight> roots);

  // Sorted by (lhs, rhs).
  const std::vector<Rule>& rules() const { return rules_; }
  // Sorted by label.
  const std::vector<RootWeight>& roots() const { return roots_; }
  std::vector<std::string> nonterminals() const;
  std::span<const Rule> rules_for(std::string_view lhs) const;
  // 0 when the rule is absent.
  double probability(std::string_view lhs, std::span<const std::string> rhs) const;

  bool operator==(const Pcfg& other) const {
    return rules_ == other.rules_ && roots_ == other.roots_;
  }

 private:
  friend class PcfgSampler;

  std::vector<Rule> rules_;
  std::vector<RootWeight> roots_;
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> ranges_;
};

// Relative-frequency estimate of rules and of the root-label distribution.
// Terminal children become the terminal marker. Throws on an empty corpus.
Pcfg extract_rules(std::span<const ParseTree> trees);

// "lhs -> rhs... : p" lines and "@root LABEL : p" lines; '#' comments.
// Probabilities are written in shortest round-trip form.
std::string write_grammar(const Pcfg& grammar);
Pcfg parse_grammar(std::string_view text);
Pcfg read_grammar(const std::filesystem::path& path);

struct SampleOptions {
  // Breadth-synchronous expansion rounds before an attempt is discarded.
  std::size_t max_iterations = 100;
  // Node budget per attempt; exceeding it also discards.
  std::size_t node_cap = std::size_t{1} << 20;
};

enum class SampleStatus { terminated, iteration_cap, node_cap };

struct SampleOutcome {
  SampleStatus status = SampleStatus::terminated;
  std::optional<ParseTree> tree;
  std::size_t iterations = 0;
};

// Precompiled cumulative tables for fast repeated sampling.
class PcfgSampler {
 public:
  explicit PcfgSampler(const Pcfg& grammar);
  SampleOutcome sample(Rng& rng, const SampleOptions& options) const;

 private:
  struct Choice {
    std::vector<double> cumulative;
    std::vector<std::vector<std::int32_t>> rhs;  // -1 is the terminal marker
  };
  std::vector<std::string> names_;
  std::vector<Choice> choices_;
  std::vector<double> root_cumulative_;
  std::vector<std::int32_t> root_symbols_;
};

SampleOutcome sample_tree(const Pcfg& grammar, const SampleOptions& options,
                          std::uint64_t seed);

struct GenerationReport {
  std::uint64_t seed = 0;
  std::size_t max_iterations = 0;
  std::size_t node_cap = 0;
  std::size_t attempts = 0;
  std::size_t terminated = 0;
  std::size_t discarded_iterations = 0;
  std::size_t discarded_nodes = 0;
  // Leaf count of terminated trees -> number of trees.
  std::map<std::size_t, std::size_t> size_histogram;

  std::size_t discarded() const { return discarded_iterations + discarded_nodes; }
};

// Attempt i uses the stream mix_seed(seed, i). Terminated trees are passed
// to `sink` in attempt order. Throws if attempts == 0.
GenerationReport generate_corpus(const Pcfg& grammar, std::size_t attempts,
                                 const SampleOptions& options, std::uint64_t seed,
                                 const std::function<void(ParseTree&&)>& sink);

struct GeneratedCorpus {
  std::vector<ParseTree> trees;
  GenerationReport report;
};

GeneratedCorpus generate_corpus(const Pcfg& grammar, std::size_t attempts,
                                const SampleOptions& options, std::uint64_t seed);

// Per-lhs total-variation distance between the rule distributions of two
// grammars over the union of their left-hand sides; the root distribution
// is reported under the key "@root". A side missing an lhs counts as
// distance 1.
std::map<std::string, double> total_variation(const Pcfg& a, const Pcfg& b);

}  // namespace syncorr
