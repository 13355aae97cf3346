#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syncorr/corpus.hpp"
#include "syncorr/histogram.hpp"
#include "syncorr/pcfg.hpp"
#include "syncorr/pipeline/config.hpp"
#include "syncorr/pipeline/output.hpp"
#include "syncorr/preprocess.hpp"
#include "syncorr/synthetic.hpp"
#include "syncorr/tag_map.hpp"

namespace syncorr::pipeline {

struct ExperimentResult {
  std::string experiment;
  // Files written, relative to the output directory, in write order.
  std::vector<std::string> files;
};

TagMap resolve_tag_map(const ExperimentConfig& cfg);

struct LoadedCorpus {
  std::vector<ParseTree> original;
  Corpus corpus;
  PreprocessReport report;
  // (path as given, SHA-256 of its bytes)
  std::vector<std::pair<std::string, std::string>> checksums;
};

// Reads every corpus file and preprocesses the concatenation.
LoadedCorpus load_corpus(const ExperimentConfig& cfg);

struct SamplingPlan {
  Range range;
  std::vector<std::size_t> ladder;
  std::vector<Estimator> estimators;
  std::uint64_t seed = 1;
  std::string source = "corpus";
  std::size_t memory_budget = std::size_t{1} << 25;
};

SamplingPlan sampling_plan(const ExperimentConfig& cfg, Range range, std::string source);

// One uniform sample of the top rung per distance, without replacement;
// lower rungs are prefixes of it. Rows are ordered by (distance, rung,
// estimator).
std::vector<EstimateRow> estimate_mi(const Corpus& corpus, DistanceKind kind,
                                     NodeSelection selection, const SamplingPlan& plan);

// Pairs where one node dominates the other are left out. Throws if the
// condition pair has no node pair in range.
std::vector<EstimateRow> estimate_cfib(const Corpus& corpus, const CfibPair& pair,
                                       const SamplingPlan& plan);

// Cell counts {n00, n01, n10, n11} after each rung of i.i.d. draws; the
// draw sequence is the one sample_synthetic_pairs produces.
std::vector<std::array<std::uint64_t, 4>> synthetic_counts(const SyntheticModel& m, double r,
                                                           const std::vector<std::size_t>& ladder,
                                                           std::uint64_t seed);

std::vector<EstimateRow> estimate_synthetic(const SyntheticModel& m, const SamplingPlan& plan);

// Log-mode fits of each estimator's top-rung curve. Flagged rows are left
// out; non-positive values are dropped and listed as excluded points.
FitReport fit_estimates(const std::vector<EstimateRow>& rows, std::string_view prefix,
                        const FitRange& range, std::size_t top_rung);

// Linear-mode fits of the mean r_seq per r_str.
FitReport fit_growth(const DistanceHistogram& hist, std::string_view id, const FitRange& range);

// Subcommands. Each writes its outputs and a "<name>_manifest.txt" into
// cfg.out.
ExperimentResult run_preprocess(const ExperimentConfig& cfg);
ExperimentResult run_tree_stats(const ExperimentConfig& cfg);
ExperimentResult run_mi_sequential(const ExperimentConfig& cfg);
ExperimentResult run_mi_structural(const ExperimentConfig& cfg);
ExperimentResult run_growth(const ExperimentConfig& cfg);
ExperimentResult run_cfib(const ExperimentConfig& cfg);
ExperimentResult run_pcfg_extract(const ExperimentConfig& cfg);
ExperimentResult run_pcfg_generate(const ExperimentConfig& cfg);
ExperimentResult run_pcfg_study(const ExperimentConfig& cfg);
ExperimentResult run_synthetic(const ExperimentConfig& cfg);

struct FitJob {
  std::filesystem::path input;
  std::string x_column = "distance";
  std::string y_column = "value_nats";
  bool log_scaled = true;
  // Rows must match every (column, value) filter.
  std::vector<std::pair<std::string, std::string>> filters;
  // One series per distinct combination of these columns.
  std::vector<std::string> group_by;
  FitRange range;
  std::string name = "fit";
};

ExperimentResult run_fit(const ExperimentConfig& cfg, const FitJob& job);

}  // namespace syncorr::pipeline
