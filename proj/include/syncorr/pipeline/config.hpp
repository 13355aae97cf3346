#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncorr/estimators.hpp"
#include "syncorr/pairs.hpp"
#include "syncorr/preprocess.hpp"
#include "syncorr/synthetic.hpp"

namespace syncorr::pipeline {

// Inclusive integer distance range.
struct Range {
  std::size_t lo = 1;
  std::size_t hi = 1;

  bool operator==(const Range&) const = default;
};

// Inclusive fit window over r; nullopt bounds are open.
struct FitRange {
  std::optional<double> lo;
  std::optional<double> hi;

  bool operator==(const FitRange&) const = default;
};

struct CfibPair {
  std::string x0;
  std::string x1;

  bool operator==(const CfibPair&) const = default;
};

struct ExperimentConfig {
  std::string preset = "english";

  // Input and preprocessing.
  std::vector<std::filesystem::path> corpus;
  bool strict = false;
  PreprocessOptions preprocess;
  // Tag map file; when empty the named shipped map is used.
  std::filesystem::path tag_map;
  std::string tag_map_preset = "english";

  // Analyses.
  Range seq_range{1, 30};
  Range str_range{1, 30};
  Range cfib_range{1, 20};
  std::vector<std::size_t> ladder{10'000, 40'000, 160'000, 640'000, 2'560'000};
  std::vector<Estimator> estimators{Estimator::grassberger};
  std::vector<CfibPair> cfib_pairs{{"NP", "NP"}, {"NP", "VP"}, {"VP", "VP"}};
  FitRange seq_fit;
  FitRange str_fit;
  FitRange cfib_fit;
  FitRange growth_fit;
  // Upper bound on pairs held in memory at once while sampling.
  std::size_t memory_budget = std::size_t{1} << 25;

  // PCFG generation.
  std::filesystem::path grammar;
  std::size_t attempts = 100'000;
  std::size_t max_iterations = 100;
  std::size_t node_cap = std::size_t{1} << 20;

  // Synthetic source.
  SyntheticModel::Kind synth_model = SyntheticModel::Kind::exponential;
  double lambda = 0.1;
  double alpha = 2.0;
  Range synth_range{1, 100};

  std::uint64_t seed = 1;
  std::filesystem::path out = "out";

  SyntheticModel synthetic_model() const;
  // pos_and_phrasal, or phrasal_only under the phrasal_only scheme.
  NodeSelection structural_selection() const;
};

// english, japanese, pcfg, synthetic.
ExperimentConfig preset(std::string_view name);
std::vector<std::string> preset_names();

enum class Needs { nothing, corpus, grammar };

// Checks ranges, ladder order and that referenced files exist.
void validate(const ExperimentConfig& cfg, Needs needs);

// Every setting except the output directory as sorted "key = value" lines;
// hashed into the run manifest.
std::string canonical_text(const ExperimentConfig& cfg);

// Parsers for the command-line forms.
Range parse_range(std::string_view text);            // "a:b" or "a"
FitRange parse_fit_range(std::string_view text);     // "a:b", ":b", "a:", ""
CfibPair parse_cfib_pair(std::string_view text);     // "NP,VP"
std::vector<std::size_t> parse_ladder(std::string_view text);  // "1e4,4e4"
std::string format_range(const Range& r);
std::string format_fit_range(const FitRange& r);

}  // namespace syncorr::pipeline
