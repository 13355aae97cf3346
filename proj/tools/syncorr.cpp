// syncorr: command-line driver for the correlation analyses.

#include <CLI11.hpp>

#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "syncorr/error.hpp"
#include "syncorr/pipeline/config.hpp"
#include "syncorr/pipeline/experiments.hpp"

namespace pl = syncorr::pipeline;

namespace {

// --preset selects the defaults every other option overrides, so it is
// read before the parser is built.
std::string scan_preset(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--preset" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--preset=", 0) == 0) return arg.substr(9);
  }
  return "english";
}

struct Raw {
  std::string scheme;
  std::string binarize;
  std::string ladder;
  std::string estimators;
  std::vector<std::string> null_labels;
  std::vector<std::string> null_tokens;
  std::vector<std::string> corpus;
  std::string tag_map;
  std::string out;
  std::string seq_range, str_range, cfib_range, synth_range;
  std::string seq_fit, str_fit, cfib_fit, growth_fit;
  std::vector<std::string> pairs;
  std::string grammar;
  std::string model;
  // fit
  std::string input, mode = "log", fit_range, name = "fit";
  std::vector<std::string> filters;
  std::vector<std::string> by;
};

void apply(const Raw& raw, pl::ExperimentConfig& cfg, const CLI::App& app) {
  using namespace syncorr;
  if (!raw.scheme.empty()) cfg.preprocess.scheme = parse_scheme(raw.scheme);
  if (!raw.binarize.empty()) cfg.preprocess.direction = parse_direction(raw.binarize);
  if (!raw.ladder.empty()) cfg.ladder = pl::parse_ladder(raw.ladder);
  if (!raw.estimators.empty()) cfg.estimators = parse_estimators(raw.estimators);
  if (app.count("--null-label") > 0) cfg.preprocess.nulls.label_prefixes = raw.null_labels;
  if (app.count("--null-token") > 0) cfg.preprocess.nulls.token_prefixes = raw.null_tokens;
  if (!raw.corpus.empty()) cfg.corpus.assign(raw.corpus.begin(), raw.corpus.end());
  if (!raw.tag_map.empty()) cfg.tag_map = raw.tag_map;
  if (!raw.out.empty()) cfg.out = raw.out;
  if (!raw.seq_range.empty()) cfg.seq_range = pl::parse_range(raw.seq_range);
  if (!raw.str_range.empty()) cfg.str_range = pl::parse_range(raw.str_range);
  if (!raw.cfib_range.empty()) cfg.cfib_range = pl::parse_range(raw.cfib_range);
  if (!raw.synth_range.empty()) cfg.synth_range = pl::parse_range(raw.synth_range);
  if (!raw.seq_fit.empty()) cfg.seq_fit = pl::parse_fit_range(raw.seq_fit);
  if (!raw.str_fit.empty()) cfg.str_fit = pl::parse_fit_range(raw.str_fit);
  if (!raw.cfib_fit.empty()) cfg.cfib_fit = pl::parse_fit_range(raw.cfib_fit);
  if (!raw.growth_fit.empty()) cfg.growth_fit = pl::parse_fit_range(raw.growth_fit);
  if (!raw.pairs.empty()) {
    cfg.cfib_pairs.clear();
    for (const auto& p : raw.pairs) cfg.cfib_pairs.push_back(pl::parse_cfib_pair(p));
  }
  if (!raw.grammar.empty()) cfg.grammar = raw.grammar;
  if (!raw.model.empty()) cfg.synth_model = parse_synthetic_kind(raw.model);
}

}  // namespace

int main(int argc, char** argv) {
  pl::ExperimentConfig cfg;
  try {
    cfg = pl::preset(scan_preset(argc, argv));
  } catch (const syncorr::Error& e) {
    std::cerr << "syncorr: error: " << e.what() << "\n";
    return 2;
  }
  Raw raw;

  CLI::App app{"Mutual-information decay, CFIB and PCFG analyses of bracketed treebanks"};
  app.set_version_flag("--version", std::string("syncorr ") + SYNCORR_VERSION);
  app.set_config("--config", "", "INI file: top-level keys set global options, [subcommand] sections set that command's options");
  app.require_subcommand(1);
  app.fallthrough();

  std::string preset_name = cfg.preset;
  app.add_option("--preset", preset_name, "Defaults: english, japanese, pcfg, synthetic")
      ->configurable(false);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--out", raw.out, "Output directory (default: out)");
  app.add_option("--scheme", raw.scheme, "binarized, unbinarized or phrasal_only");
  app.add_option("--corpus", raw.corpus, "Bracketed treebank file(s)");
  app.add_flag("--strict", cfg.strict, "Reject unlabeled top-level wrapper groups");
  app.add_option("--tag-map", raw.tag_map, "Tag map file (REDUCED: raw1 raw2 ...)");
  app.add_option("--tag-map-preset", cfg.tag_map_preset, "Shipped tag map: english or japanese");
  app.add_option("--null-label", raw.null_labels, "Preterminal label prefix marking null leaves");
  app.add_option("--null-token", raw.null_tokens, "Token prefix marking null leaves, e.g. *T*");
  app.add_option("--binarize", raw.binarize, "Binarization direction: left or right");
  app.add_option("--max-length", cfg.preprocess.max_length, "Drop sentences longer than this (0: keep all)");
  app.add_option("--ladder", raw.ladder, "N_data ladder, comma-separated, e.g. 1e4,4e4,1.6e5");
  app.add_option("--estimator", raw.estimators, "Estimators: plugin,gr,mm,za,cs,ht");
  app.add_option("--memory-budget", cfg.memory_budget, "Max pairs held in memory while sampling");

  auto* preprocess = app.add_subcommand("preprocess", "Write preprocessed trees and the preprocessing report");
  auto* stats = app.add_subcommand("stats", "Tree-shape statistics of the original trees");

  auto* mi_seq = app.add_subcommand("mi-seq", "MI between POS tags against sequential distance");
  mi_seq->add_option("--range", raw.seq_range, "Distances lo:hi");
  mi_seq->add_option("--fit-range", raw.seq_fit, "Fit window lo:hi");

  auto* mi_str = app.add_subcommand("mi-str", "MI between tags against structural distance");
  mi_str->add_option("--range", raw.str_range, "Distances lo:hi");
  mi_str->add_option("--fit-range", raw.str_fit, "Fit window lo:hi");

  auto* growth = app.add_subcommand("growth", "Joint distance histogram and mean r_seq per r_str");
  growth->add_option("--fit-range", raw.growth_fit, "Fit window lo:hi");

  auto* cfib = app.add_subcommand("cfib", "Context-free independence breaking per condition pair");
  cfib->add_option("--range", raw.cfib_range, "Structural distances lo:hi");
  cfib->add_option("--pair", raw.pairs, "Condition pair X0,X1 (repeatable)");
  cfib->add_option("--fit-range", raw.cfib_fit, "Fit window lo:hi");

  auto* extract = app.add_subcommand("pcfg-extract", "Maximum-likelihood PCFG of the preprocessed corpus");

  auto* generate = app.add_subcommand("pcfg-generate", "Sample trees from a grammar file");
  generate->add_option("--grammar", raw.grammar, "Grammar file")->required();
  generate->add_option("--attempts", cfg.attempts, "Generation attempts");
  generate->add_option("--max-iterations", cfg.max_iterations, "Expansion rounds per attempt");
  generate->add_option("--node-cap", cfg.node_cap, "Node budget per attempt");

  auto* study = app.add_subcommand("pcfg-study", "Extract a PCFG, generate from it and rerun every analysis");
  study->add_option("--attempts", cfg.attempts, "Generation attempts");
  study->add_option("--max-iterations", cfg.max_iterations, "Expansion rounds per attempt");
  study->add_option("--node-cap", cfg.node_cap, "Node budget per attempt");
  study->add_option("--seq-range", raw.seq_range, "Sequential distances lo:hi");
  study->add_option("--str-range", raw.str_range, "Structural distances lo:hi");
  study->add_option("--cfib-range", raw.cfib_range, "CFIB structural distances lo:hi");
  study->add_option("--pair", raw.pairs, "CFIB condition pair X0,X1 (repeatable)");
  study->add_option("--seq-fit", raw.seq_fit, "Fit window for sequential MI");
  study->add_option("--str-fit", raw.str_fit, "Fit window for structural MI");
  study->add_option("--cfib-fit", raw.cfib_fit, "Fit window for CFIB");
  study->add_option("--growth-fit", raw.growth_fit, "Fit window for growth");

  auto* synth = app.add_subcommand("synth", "Two-symbol synthetic model with exact MI");
  synth->add_option("--model", raw.model, "exponential or power_law");
  synth->add_option("--lambda", cfg.lambda, "Exponential decay rate");
  synth->add_option("--alpha", cfg.alpha, "Power-law exponent");
  synth->add_option("--range", raw.synth_range, "Distances lo:hi");

  pl::FitJob job;
  auto* fit = app.add_subcommand("fit", "Fit exponential and power-law models to a CSV column");
  fit->add_option("--input", raw.input, "CSV file")->required();
  fit->add_option("--x", job.x_column, "Distance column");
  fit->add_option("--y", job.y_column, "Value column");
  fit->add_option("--mode", raw.mode, "log (decay) or linear (growth)");
  fit->add_option("--filter", raw.filters, "Keep rows with column=value (repeatable)");
  fit->add_option("--by", raw.by, "Fit one series per distinct value of these columns");
  fit->add_option("--fit-range", raw.fit_range, "Fit window lo:hi");
  fit->add_option("--name", raw.name, "Output stem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    apply(raw, cfg, app);
    pl::ExperimentResult result;
    if (preprocess->parsed()) result = pl::run_preprocess(cfg);
    if (stats->parsed()) result = pl::run_tree_stats(cfg);
    if (mi_seq->parsed()) result = pl::run_mi_sequential(cfg);
    if (mi_str->parsed()) result = pl::run_mi_structural(cfg);
    if (growth->parsed()) result = pl::run_growth(cfg);
    if (cfib->parsed()) result = pl::run_cfib(cfg);
    if (extract->parsed()) result = pl::run_pcfg_extract(cfg);
    if (generate->parsed()) result = pl::run_pcfg_generate(cfg);
    if (study->parsed()) result = pl::run_pcfg_study(cfg);
    if (synth->parsed()) result = pl::run_synthetic(cfg);
    if (fit->parsed()) {
      job.input = raw.input;
      if (raw.mode != "log" && raw.mode != "linear") {
        throw syncorr::Error("--mode must be log or linear, got '" + raw.mode + "'");
      }
      job.log_scaled = raw.mode == "log";
      for (const auto& f : raw.filters) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw syncorr::Error("--filter needs column=value, got '" + f + "'");
        job.filters.emplace_back(f.substr(0, eq), f.substr(eq + 1));
      }
      for (const auto& b : raw.by) {
        std::stringstream ss(b);
        for (std::string c; std::getline(ss, c, ',');) {
          if (!c.empty()) job.group_by.push_back(c);
        }
      }
      job.range = pl::parse_fit_range(raw.fit_range);
      job.name = raw.name;
      result = pl::run_fit(cfg, job);
    }
    for (const auto& f : result.files) std::cout << (cfg.out / f).generic_string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "syncorr: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
