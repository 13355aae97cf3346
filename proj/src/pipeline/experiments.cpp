#include "syncorr/pipeline/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "syncorr/bracketed.hpp"
#include "syncorr/error.hpp"
#include "syncorr/format.hpp"
#include "syncorr/information.hpp"
#include "syncorr/pairs.hpp"
#include "syncorr/rng.hpp"
#include "syncorr/sampling.hpp"
#include "syncorr/tree_stats.hpp"

namespace syncorr::pipeline {

namespace {

constexpr std::uint64_t kSequentialStream = 1;
constexpr std::uint64_t kStructuralStream = 2;
constexpr std::uint64_t kSyntheticStream = 3;
constexpr std::uint64_t kGenerationStream = 4;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Appends one flag to a ';'-joined list.
void add_flag(std::string& flags, std::string_view flag) {
  if (!flags.empty()) flags += ';';
  flags += flag;
}

// Rows for one distance from a shuffled sample of table keys.
void estimate_rungs(std::vector<EstimateRow>& rows, const std::vector<std::uint64_t>& sample,
                    std::size_t population, std::size_t distance, DistanceKind kind,
                    const SamplingPlan& plan) {
  CountTable joint;
  std::size_t used = 0;
  for (std::size_t rung : plan.ladder) {
    const std::size_t take = std::min(rung, sample.size());
    for (; used < take; ++used) joint.add(sample[used]);
    for (Estimator e : plan.estimators) {
      EstimateRow row{distance, kind, e, rung, std::nullopt, plan.source, ""};
      if (population == 0) {
        add_flag(row.flag, "no_pairs");
      } else {
        const MiEstimate mi = mutual_information(joint, e);
        row.value = mi.value;
        if (population < rung) add_flag(row.flag, "shortfall:" + std::to_string(population));
        if (!mi.reliable) add_flag(row.flag, "unreliable");
      }
      rows.push_back(std::move(row));
    }
  }
}

// Shared driver: count pairs per distance, then sample distances in
// batches whose reservoirs fit the memory budget. `enumerate(lo, hi, sink)`
// must call sink(r, key) for every item at distance r in [lo, hi], in a
// deterministic order.
template <class Enumerate>
std::vector<EstimateRow> sample_and_estimate(const SamplingPlan& plan, DistanceKind kind,
                                             std::uint64_t stream, Enumerate&& enumerate) {
  const Range range = plan.range;
  const std::size_t top = plan.ladder.back();
  std::vector<std::size_t> population(range.hi - range.lo + 1, 0);
  enumerate(range.lo, range.hi, [&](std::size_t r, std::uint64_t) { ++population[r - range.lo]; });

  std::vector<EstimateRow> rows;
  std::size_t lo = range.lo;
  while (lo <= range.hi) {
    std::size_t hi = lo;
    std::size_t held = std::min(top, population[lo - range.lo]);
    while (hi < range.hi && held + std::min(top, population[hi + 1 - range.lo]) <= plan.memory_budget) {
      ++hi;
      held += std::min(top, population[hi - range.lo]);
    }
    std::vector<Reservoir<std::uint64_t>> reservoirs;
    for (std::size_t r = lo; r <= hi; ++r) {
      reservoirs.emplace_back(std::min(top, population[r - range.lo]), mix_seed(plan.seed, stream, r));
    }
    enumerate(lo, hi, [&](std::size_t r, std::uint64_t key) { reservoirs[r - lo].offer(key); });
    for (std::size_t r = lo; r <= hi; ++r) {
      const std::vector<std::uint64_t> sample = std::move(reservoirs[r - lo]).take();
      estimate_rungs(rows, sample, population[r - range.lo], r, kind, plan);
    }
    lo = hi + 1;
  }
  return rows;
}

std::string checksum_list(const std::vector<std::pair<std::string, std::string>>& sums) {
  std::string out;
  for (const auto& [path, sum] : sums) {
    if (!out.empty()) out += ' ';
    out += path + "@sha256:" + sum;
  }
  return out;
}

class Run {
 public:
  Run(const ExperimentConfig& cfg, std::string experiment, std::string stem)
      : cfg_(cfg), stem_(std::move(stem)) {
    result_.experiment = std::move(experiment);
    manifest_.add("tool", std::string("syncorr ") + SYNCORR_VERSION);
    manifest_.add("experiment", result_.experiment);
    manifest_.add("config_sha256", sha256_hex(canonical_text(cfg)));
    manifest_.add("seed", std::to_string(cfg.seed));
    manifest_.add("scheme", std::string(to_string(cfg.preprocess.scheme)));
  }

  Manifest& manifest() { return manifest_; }

  void write(const std::string& name, std::string_view content) {
    write_file(cfg_.out / name, content);
    result_.files.push_back(name);
  }

  void record_corpus(const LoadedCorpus& loaded) {
    manifest_.add("corpus", checksum_list(loaded.checksums));
    manifest_.add("preprocess.input_trees", std::to_string(loaded.report.input_trees));
    manifest_.add("preprocess.dropped_empty", std::to_string(loaded.report.dropped_empty));
    manifest_.add("preprocess.dropped_long", std::to_string(loaded.report.dropped_long));
    manifest_.add("preprocess.kept", std::to_string(loaded.report.kept));
    manifest_.add("unmapped.total", std::to_string(loaded.report.unmapped.total()));
    for (const auto& [tag, n] : loaded.report.unmapped.counts) {
      manifest_.add("unmapped." + tag, std::to_string(n));
    }
  }

  ExperimentResult finish() {
    std::istringstream config(canonical_text(cfg_));
    for (std::string line; std::getline(config, line);) {
      const auto eq = line.find(" = ");
      manifest_.add("config." + line.substr(0, eq), line.substr(eq + 3));
    }
    for (const auto& f : result_.files) manifest_.add("output", f);
    const std::string name = stem_ + "_manifest.txt";
    write_file(cfg_.out / name, manifest_.text());
    result_.files.push_back(name);
    return result_;
  }

 private:
  const ExperimentConfig& cfg_;
  std::string stem_;
  Manifest manifest_;
  ExperimentResult result_;
};

std::string csv_of(const std::vector<EstimateRow>& rows) {
  std::ostringstream out;
  write_estimates_csv(out, rows);
  return out.str();
}

std::string file_safe(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

void emit_mi(Run& run, const Corpus& corpus, const ExperimentConfig& cfg, DistanceKind kind,
             const std::string& source, const std::string& prefix) {
  const bool seq = kind == DistanceKind::sequential;
  const std::string stem = prefix + (seq ? "mi_seq" : "mi_str");
  const NodeSelection selection = seq ? NodeSelection::pos_only : cfg.structural_selection();
  const SamplingPlan plan = sampling_plan(cfg, seq ? cfg.seq_range : cfg.str_range, source);
  const auto rows = estimate_mi(corpus, kind, selection, plan);
  run.manifest().add(stem + ".node_kind", std::string(to_string(selection)));
  run.write(stem + ".csv", csv_of(rows));
  run.write(stem + "_fits.json",
            fit_report_json(fit_estimates(rows, stem, seq ? cfg.seq_fit : cfg.str_fit,
                                          plan.ladder.back())));
}

void emit_growth(Run& run, const Corpus& corpus, const ExperimentConfig& cfg,
                 const std::string& prefix) {
  const DistanceHistogram hist = distance_joint_histogram(corpus);
  std::ostringstream h;
  write_histogram_csv(h, hist);
  run.write(prefix + "growth_histogram.csv", h.str());
  std::string mean = "r_str,mean_r_seq,pairs\n";
  for (const auto& [r_str, m] : mean_seq_distance(hist)) {
    mean += std::to_string(r_str) + "," + format_double(m) + "," +
            std::to_string(hist.marginal(r_str)) + "\n";
  }
  run.write(prefix + "growth_mean.csv", mean);
  run.write(prefix + "growth_fits.json",
            fit_report_json(fit_growth(hist, prefix + "growth", cfg.growth_fit)));
}

void emit_cfib(Run& run, const Corpus& corpus, const ExperimentConfig& cfg,
               const std::string& source, const std::string& prefix) {
  const SamplingPlan plan = sampling_plan(cfg, cfg.cfib_range, source);
  run.manifest().add(prefix + "cfib.node_kind", std::string(to_string(NodeSelection::phrasal_only)));
  for (const CfibPair& pair : cfg.cfib_pairs) {
    const auto rows = estimate_cfib(corpus, pair, plan);
    const std::string stem = prefix + "cfib_" + file_safe(pair.x0) + "_" + file_safe(pair.x1);
    run.write(stem + ".csv", csv_of(rows));
    run.write(stem + "_fits.json",
              fit_report_json(fit_estimates(rows, stem, cfg.cfib_fit, plan.ladder.back())));
  }
}

std::string trees_text(const std::vector<ParseTree>& trees) {
  std::string out;
  for (const ParseTree& t : trees) out += write_bracketed(t) + "\n";
  return out;
}

std::string generation_text(const GenerationReport& r) {
  Manifest m;
  m.add("seed", std::to_string(r.seed));
  m.add("max_iterations", std::to_string(r.max_iterations));
  m.add("node_cap", std::to_string(r.node_cap));
  m.add("attempts", std::to_string(r.attempts));
  m.add("terminated", std::to_string(r.terminated));
  m.add("discarded", std::to_string(r.discarded()));
  m.add("discarded_iterations", std::to_string(r.discarded_iterations));
  m.add("discarded_nodes", std::to_string(r.discarded_nodes));
  for (const auto& [leaves, n] : r.size_histogram) {
    m.add("leaves." + std::to_string(leaves), std::to_string(n));
  }
  return m.text();
}

SampleOptions sample_options(const ExperimentConfig& cfg) {
  return {cfg.max_iterations, cfg.node_cap};
}

}  // namespace

TagMap resolve_tag_map(const ExperimentConfig& cfg) {
  return cfg.tag_map.empty() ? TagMap::named(cfg.tag_map_preset) : TagMap::load(cfg.tag_map);
}

LoadedCorpus load_corpus(const ExperimentConfig& cfg) {
  std::vector<ParseTree> original;
  std::vector<std::pair<std::string, std::string>> checksums;
  for (const auto& path : cfg.corpus) {
    auto trees = read_treebank(path, ReadOptions{cfg.strict});
    for (auto& t : trees) original.push_back(std::move(t));
    checksums.emplace_back(path.generic_string(), sha256_file(path));
  }
  const TagMap map = resolve_tag_map(cfg);
  PreprocessReport report;
  auto processed = preprocess_corpus(original, cfg.preprocess, map, &report);
  return {std::move(original), Corpus(std::move(processed)), std::move(report), std::move(checksums)};
}

SamplingPlan sampling_plan(const ExperimentConfig& cfg, Range range, std::string source) {
  return {range, cfg.ladder, cfg.estimators, cfg.seed, std::move(source), cfg.memory_budget};
}

std::vector<EstimateRow> estimate_mi(const Corpus& corpus, DistanceKind kind,
                                     NodeSelection selection, const SamplingPlan& plan) {
  if (kind == DistanceKind::sequential) {
    return sample_and_estimate(plan, kind, kSequentialStream, [&](std::size_t lo, std::size_t hi, auto&& sink) {
      for_each_sequential_pair(corpus, lo, hi, [&](std::size_t r, const NodePair& p) {
        sink(r, CountTable::pack(p.x0, p.x1));
      });
    });
  }
  return sample_and_estimate(plan, kind, kStructuralStream, [&](std::size_t lo, std::size_t hi, auto&& sink) {
    for_each_structural_pair(corpus, selection, lo, hi, [&](std::size_t r, const NodePair& p) {
      sink(r, CountTable::pack(p.x0, p.x1));
    });
  });
}

std::vector<EstimateRow> estimate_cfib(const Corpus& corpus, const CfibPair& pair,
                                       const SamplingPlan& plan) {
  const auto x0 = corpus.symbols().find(pair.x0);
  const auto x1 = corpus.symbols().find(pair.x1);
  const std::string name = "(" + pair.x0 + ", " + pair.x1 + ")";
  if (!x0 || !x1) throw Error("CFIB condition pair " + name + " does not occur in the corpus");
  // Composite child symbols are interned in enumeration order, which is
  // deterministic; estimates do not depend on the ids chosen.
  std::unordered_map<std::uint64_t, std::uint32_t> composite;
  auto intern = [&](Symbol y, Symbol z) {
    return composite.try_emplace(CountTable::pack(y, z), static_cast<std::uint32_t>(composite.size()))
        .first->second;
  };
  const std::uint64_t stream = mix_seed(kStructuralStream, fnv1a(pair.x0 + "," + pair.x1));
  auto rows = sample_and_estimate(plan, DistanceKind::structural, stream,
                                  [&](std::size_t lo, std::size_t hi, auto&& sink) {
    for_each_structural_pair(corpus, NodeSelection::phrasal_only, lo, hi,
                             [&](std::size_t r, const NodePair& p) {
      if (p.x0 != *x0 || p.x1 != *x1) return;
      if (on_one_branch(corpus.index(p.tree), p.a, p.b, r)) return;
      const ChildQuad q = child_quad(corpus, p);
      sink(r, CountTable::pack(intern(q.y0, q.z0), intern(q.y1, q.z1)));
    });
  });
  const bool any = std::any_of(rows.begin(), rows.end(), [](const EstimateRow& r) { return r.value.has_value(); });
  if (!any) {
    throw Error("CFIB condition pair " + name + " has no node pairs at structural distances " +
                format_range(plan.range));
  }
  return rows;
}

std::vector<std::array<std::uint64_t, 4>> synthetic_counts(const SyntheticModel& m, double r,
                                                           const std::vector<std::size_t>& ladder,
                                                           std::uint64_t seed) {
  const double same = (1.0 + m.delta(r)) / 2.0;
  Rng rng(seed);
  std::array<std::uint64_t, 4> cells{};
  std::vector<std::array<std::uint64_t, 4>> out;
  std::size_t drawn = 0;
  for (std::size_t rung : ladder) {
    for (; drawn < rung; ++drawn) {
      const unsigned x = rng.uniform() < 0.5 ? 0 : 1;
      const unsigned y = rng.uniform() < same ? x : 1 - x;
      ++cells[2 * x + y];
    }
    out.push_back(cells);
  }
  return out;
}

std::vector<EstimateRow> estimate_synthetic(const SyntheticModel& m, const SamplingPlan& plan) {
  std::vector<EstimateRow> rows;
  for (std::size_t r = plan.range.lo; r <= plan.range.hi; ++r) {
    const auto counts = synthetic_counts(m, static_cast<double>(r), plan.ladder,
                                         mix_seed(plan.seed, kSyntheticStream, r));
    for (std::size_t i = 0; i < plan.ladder.size(); ++i) {
      CountTable joint;
      for (unsigned cell = 0; cell < 4; ++cell) joint.add(CountTable::pack(cell / 2, cell % 2), counts[i][cell]);
      for (Estimator e : plan.estimators) {
        const MiEstimate mi = mutual_information(joint, e);
        EstimateRow row{r, DistanceKind::sequential, e, plan.ladder[i], mi.value, plan.source, ""};
        if (!mi.reliable) add_flag(row.flag, "unreliable");
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

void fit_series(FitReport& report, const Series& full, const FitRange& range) {
  Series s = restrict_range(full, range.lo.value_or(-1e300), range.hi.value_or(1e300));
  SplitSeries split = s.log_scaled ? positive_points(s) : SplitSeries{s, {}};
  if (split.kept.points.size() < 3) {
    report.skipped.emplace_back(full.id, "fewer than 3 usable points (" +
                                             std::to_string(split.kept.points.size()) + ")");
    return;
  }
  try {
    SeriesFit f;
    f.exponential = fit_exponential(split.kept);
    f.power_law = fit_power_law(split.kept);
    f.exponential.excluded = split.excluded;
    f.power_law.excluded = split.excluded;
    f.selection = select_model(f.exponential, f.power_law);
    double lo = split.kept.points.front().r;
    double hi = lo;
    for (const Point& p : split.kept.points) {
      lo = std::min(lo, p.r);
      hi = std::max(hi, p.r);
    }
    f.range = {lo, hi};
    report.fits.push_back(std::move(f));
  } catch (const Error& e) {
    report.skipped.emplace_back(full.id, e.what());
  }
}

}  // namespace

FitReport fit_estimates(const std::vector<EstimateRow>& rows, std::string_view prefix,
                        const FitRange& range, std::size_t top_rung) {
  FitReport report;
  std::vector<Estimator> order;
  std::map<Estimator, Series> series;
  for (const EstimateRow& row : rows) {
    if (!series.contains(row.estimator)) {
      order.push_back(row.estimator);
      series[row.estimator] = Series{std::string(prefix) + "/" + std::string(to_string(row.estimator)), {}, true};
    }
    if (row.n_data != top_rung || !row.value || !row.flag.empty()) continue;
    series[row.estimator].points.push_back({static_cast<double>(row.distance), *row.value});
  }
  for (Estimator e : order) fit_series(report, series[e], range);
  return report;
}

FitReport fit_growth(const DistanceHistogram& hist, std::string_view id, const FitRange& range) {
  Series s{std::string(id), {}, false};
  for (const auto& [r_str, mean] : mean_seq_distance(hist)) {
    s.points.push_back({static_cast<double>(r_str), mean});
  }
  FitReport report;
  fit_series(report, s, range);
  return report;
}

ExperimentResult run_preprocess(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "preprocess", "preprocess");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  run.write("preprocessed.mrg", trees_text(loaded.corpus.trees()));
  return run.finish();
}

ExperimentResult run_tree_stats(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "stats", "stats");
  std::vector<ParseTree> trees;
  std::vector<std::pair<std::string, std::string>> checksums;
  for (const auto& path : cfg.corpus) {
    for (auto& t : read_treebank(path, ReadOptions{cfg.strict})) trees.push_back(std::move(t));
    checksums.emplace_back(path.generic_string(), sha256_file(path));
  }
  run.manifest().add("corpus", checksum_list(checksums));
  const TreeStats st = tree_stats(trees);
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string csv = "trees,internal_nodes,mean_depth,depth_sd,mean_branching,branching_sd,prop_unary\n";
  csv += std::to_string(st.trees) + "," + std::to_string(st.internal_nodes) + "," +
         format_double(st.mean_depth) + "," + format_double(st.depth_sd) + "," +
         opt(st.mean_branching) + "," + opt(st.branching_sd) + "," + opt(st.prop_unary) + "\n";
  run.write("tree_stats.csv", csv);
  return run.finish();
}

ExperimentResult run_mi_sequential(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "mi-seq", "mi_seq");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  emit_mi(run, loaded.corpus, cfg, DistanceKind::sequential, "corpus", "");
  return run.finish();
}

ExperimentResult run_mi_structural(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "mi-str", "mi_str");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  emit_mi(run, loaded.corpus, cfg, DistanceKind::structural, "corpus", "");
  return run.finish();
}

ExperimentResult run_growth(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "growth", "growth");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  emit_growth(run, loaded.corpus, cfg, "");
  return run.finish();
}

ExperimentResult run_cfib(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "cfib", "cfib");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  emit_cfib(run, loaded.corpus, cfg, "corpus", "");
  return run.finish();
}

ExperimentResult run_pcfg_extract(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "pcfg-extract", "pcfg_extract");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  run.write("grammar.txt", write_grammar(extract_rules(loaded.corpus.trees())));
  return run.finish();
}

ExperimentResult run_pcfg_generate(const ExperimentConfig& cfg) {
  validate(cfg, Needs::grammar);
  Run run(cfg, "pcfg-generate", "pcfg_generate");
  run.manifest().add("grammar_sha256", sha256_file(cfg.grammar));
  const Pcfg grammar = read_grammar(cfg.grammar);
  std::string trees;
  const GenerationReport report =
      generate_corpus(grammar, cfg.attempts, sample_options(cfg), mix_seed(cfg.seed, kGenerationStream),
                      [&](ParseTree&& t) { trees += write_bracketed(t) + "\n"; });
  run.write("generated.mrg", trees);
  run.write("generation_report.txt", generation_text(report));
  return run.finish();
}

ExperimentResult run_pcfg_study(const ExperimentConfig& cfg) {
  validate(cfg, Needs::corpus);
  Run run(cfg, "pcfg-study", "pcfg_study");
  const LoadedCorpus loaded = load_corpus(cfg);
  run.record_corpus(loaded);
  const Pcfg grammar = extract_rules(loaded.corpus.trees());
  run.write("pcfg_grammar.txt", write_grammar(grammar));

  GeneratedCorpus generated =
      generate_corpus(grammar, cfg.attempts, sample_options(cfg), mix_seed(cfg.seed, kGenerationStream));
  std::string report = generation_text(generated.report);
  if (generated.trees.empty()) {
    run.write("pcfg_generation.txt", report);
    throw Error("the grammar produced no terminated trees in " + std::to_string(cfg.attempts) +
                " attempts");
  }
  // Round trip: re-estimate the grammar from the generated trees.
  double max_tv = 0.0;
  std::string tv_lines;
  for (const auto& [lhs, tv] : total_variation(grammar, extract_rules(generated.trees))) {
    tv_lines += "roundtrip.tv." + lhs + " = " + format_double(tv) + "\n";
    max_tv = std::max(max_tv, tv);
  }
  report += "roundtrip.max_tv = " + format_double(max_tv) + "\n" + tv_lines;
  run.write("pcfg_generation.txt", report);

  const Corpus corpus(std::move(generated.trees));
  emit_mi(run, corpus, cfg, DistanceKind::sequential, "pcfg", "pcfg_");
  emit_mi(run, corpus, cfg, DistanceKind::structural, "pcfg", "pcfg_");
  emit_growth(run, corpus, cfg, "pcfg_");
  emit_cfib(run, corpus, cfg, "pcfg", "pcfg_");
  return run.finish();
}

ExperimentResult run_synthetic(const ExperimentConfig& cfg) {
  validate(cfg, Needs::nothing);
  Run run(cfg, "synth", "synth");
  const SyntheticModel model = cfg.synthetic_model();
  run.manifest().add("synth.model", std::string(to_string(model.kind)));
  run.manifest().add("synth.parameter", format_double(model.parameter));
  const SamplingPlan plan = sampling_plan(cfg, cfg.synth_range, "synthetic");
  const auto rows = estimate_synthetic(model, plan);
  run.write("synth.csv", csv_of(rows));

  std::string exact = "distance,delta,exact_mi\n";
  Series exact_series{"synth/exact", {}, true};
  for (std::size_t r = plan.range.lo; r <= plan.range.hi; ++r) {
    const double d = model.delta(static_cast<double>(r));
    exact += std::to_string(r) + "," + format_double(d) + "," + format_double(exact_mi(d)) + "\n";
    exact_series.points.push_back({static_cast<double>(r), exact_mi(d)});
  }
  run.write("synth_exact.csv", exact);

  FitReport fits = fit_estimates(rows, "synth", FitRange{}, plan.ladder.back());
  fit_series(fits, exact_series, FitRange{});
  run.write("synth_fits.json", fit_report_json(fits));
  return run.finish();
}

ExperimentResult run_fit(const ExperimentConfig& cfg, const FitJob& job) {
  if (!std::filesystem::is_regular_file(job.input)) {
    throw Error("fit input not found: " + job.input.string());
  }
  Run run(cfg, "fit", job.name);
  run.manifest().add("fit.input", job.input.generic_string() + "@sha256:" + sha256_file(job.input));
  run.manifest().add("fit.mode", job.log_scaled ? "log" : "linear");

  std::ifstream in(job.input, std::ios::binary);
  std::string line;
  if (!std::getline(in, line)) throw Error("fit input is empty: " + job.input.string());
  auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) cells.emplace_back(trim(cell));
    if (!text.empty() && text.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(std::string(trim(line)));
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error("column '" + name + "' not in " + job.input.string());
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(job.x_column);
  const std::size_t yi = column(job.y_column);
  std::vector<std::pair<std::size_t, std::string>> filters;
  for (const auto& [c, v] : job.filters) filters.emplace_back(column(c), v);
  std::vector<std::size_t> groups;
  for (const auto& c : job.group_by) groups.push_back(column(c));

  std::vector<std::string> order;
  std::map<std::string, Series> series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(std::string(trim(line)));
    if (cells.size() != header.size()) {
      throw Error(job.input.string() + ": line " + std::to_string(line_no) + " has " +
                  std::to_string(cells.size()) + " cells, header has " + std::to_string(header.size()));
    }
    bool keep = true;
    for (const auto& [c, v] : filters) keep = keep && cells[c] == v;
    if (!keep) continue;
    std::string key = job.name;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      key += (g == 0 ? "/" : ",") + job.group_by[g] + "=" + cells[groups[g]];
    }
    if (!series.contains(key)) {
      order.push_back(key);
      series[key] = Series{key, {}, job.log_scaled};
    }
    const auto x = parse_double(cells[xi]);
    const auto y = parse_double(cells[yi]);
    if (!x || !y) continue;  // empty estimate cells
    series[key].points.push_back({*x, *y});
  }
  FitReport report;
  for (const auto& key : order) fit_series(report, series[key], job.range);
  run.write(job.name + ".json", fit_report_json(report));
  return run.finish();
}

}  // namespace syncorr::pipeline
