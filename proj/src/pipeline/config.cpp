#include "syncorr/pipeline/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "syncorr/error.hpp"
#include "syncorr/format.hpp"

namespace syncorr::pipeline {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    out.push_back(trim(text.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const auto v = parse_double(text);
  if (!v || *v < 1.0 || *v != std::floor(*v) || *v > 1e15) {
    throw Error(std::string(what) + ": expected a positive integer, got '" + std::string(text) + "'");
  }
  return static_cast<std::size_t>(*v);
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

void check_range(const Range& r, std::string_view what) {
  if (r.lo < 1 || r.hi < r.lo) {
    throw Error(std::string(what) + " must satisfy 1 <= lo <= hi, got " + format_range(r));
  }
}

}  // namespace

SyntheticModel ExperimentConfig::synthetic_model() const {
  return {synth_model, synth_model == SyntheticModel::Kind::exponential ? lambda : alpha};
}

NodeSelection ExperimentConfig::structural_selection() const {
  return preprocess.scheme == Scheme::phrasal_only ? NodeSelection::phrasal_only
                                                   : NodeSelection::pos_and_phrasal;
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig cfg;
  cfg.preset = std::string(name);
  if (name == "english") return cfg;
  if (name == "japanese") {
    cfg.preprocess.direction = BinarizeDirection::left;
    cfg.tag_map_preset = "japanese";
    return cfg;
  }
  if (name == "pcfg") {
    cfg.ladder = {500'000, 2'000'000, 8'000'000};
    cfg.attempts = 16'000'000;
    return cfg;
  }
  if (name == "synthetic") {
    cfg.ladder = {125'000, 500'000, 2'000'000, 8'000'000};
    return cfg;
  }
  throw Error("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"english", "japanese", "pcfg", "synthetic"}; }

void validate(const ExperimentConfig& cfg, Needs needs) {
  check_range(cfg.seq_range, "sequential range");
  check_range(cfg.str_range, "structural range");
  check_range(cfg.cfib_range, "CFIB range");
  check_range(cfg.synth_range, "synthetic range");
  if (cfg.ladder.empty()) throw Error("the N_data ladder is empty");
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
    if (cfg.ladder[i] == 0) throw Error("ladder rungs must be positive");
    if (i > 0 && cfg.ladder[i] <= cfg.ladder[i - 1]) {
      throw Error("the N_data ladder must be strictly increasing");
    }
  }
  if (cfg.estimators.empty()) throw Error("no estimators configured");
  if (cfg.max_iterations == 0) throw Error("max_iterations must be at least 1");
  if (cfg.attempts == 0) throw Error("attempts must be at least 1");
  if (cfg.memory_budget == 0) throw Error("memory budget must be positive");
  if (!(cfg.lambda > 0.0) || !(cfg.alpha > 0.0)) throw Error("lambda and alpha must be positive");
  for (const auto& fr : {cfg.seq_fit, cfg.str_fit, cfg.cfib_fit, cfg.growth_fit}) {
    if (fr.lo && fr.hi && *fr.hi < *fr.lo) throw Error("empty fit range " + format_fit_range(fr));
  }
  if (!cfg.tag_map.empty() && !std::filesystem::is_regular_file(cfg.tag_map)) {
    throw Error("tag map file not found: " + cfg.tag_map.string());
  }
  if (cfg.tag_map.empty()) (void)TagMap::named(cfg.tag_map_preset);
  if (needs == Needs::corpus) {
    if (cfg.corpus.empty()) throw Error("no corpus file given");
    for (const auto& p : cfg.corpus) {
      if (!std::filesystem::is_regular_file(p)) throw Error("corpus file not found: " + p.string());
    }
  }
  if (needs == Needs::grammar) {
    if (cfg.grammar.empty()) throw Error("no grammar file given");
    if (!std::filesystem::is_regular_file(cfg.grammar)) {
      throw Error("grammar file not found: " + cfg.grammar.string());
    }
  }
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> corpus;
  for (const auto& p : cfg.corpus) corpus.push_back(p.generic_string());
  std::vector<std::string> ladder;
  for (std::size_t n : cfg.ladder) ladder.push_back(std::to_string(n));
  std::vector<std::string> estimators;
  for (Estimator e : cfg.estimators) estimators.emplace_back(to_string(e));
  std::vector<std::string> pairs;
  for (const auto& p : cfg.cfib_pairs) pairs.push_back(p.x0 + "," + p.x1);

  kv["preset"] = cfg.preset;
  kv["corpus"] = join(corpus, " ");
  kv["strict"] = cfg.strict ? "true" : "false";
  kv["null_labels"] = join(cfg.preprocess.nulls.label_prefixes, " ");
  kv["null_tokens"] = join(cfg.preprocess.nulls.token_prefixes, " ");
  kv["binarize"] = std::string(to_string(cfg.preprocess.direction));
  kv["max_length"] = std::to_string(cfg.preprocess.max_length);
  kv["scheme"] = std::string(to_string(cfg.preprocess.scheme));
  kv["tag_map"] = cfg.tag_map.empty() ? "preset:" + cfg.tag_map_preset : cfg.tag_map.generic_string();
  kv["seq_range"] = format_range(cfg.seq_range);
  kv["str_range"] = format_range(cfg.str_range);
  kv["cfib_range"] = format_range(cfg.cfib_range);
  kv["ladder"] = join(ladder, ",");
  kv["estimators"] = join(estimators, ",");
  kv["cfib_pairs"] = join(pairs, " ");
  kv["seq_fit"] = format_fit_range(cfg.seq_fit);
  kv["str_fit"] = format_fit_range(cfg.str_fit);
  kv["cfib_fit"] = format_fit_range(cfg.cfib_fit);
  kv["growth_fit"] = format_fit_range(cfg.growth_fit);
  kv["memory_budget"] = std::to_string(cfg.memory_budget);
  kv["grammar"] = cfg.grammar.generic_string();
  kv["attempts"] = std::to_string(cfg.attempts);
  kv["max_iterations"] = std::to_string(cfg.max_iterations);
  kv["node_cap"] = std::to_string(cfg.node_cap);
  kv["synth_model"] = std::string(to_string(cfg.synth_model));
  kv["lambda"] = format_double(cfg.lambda);
  kv["alpha"] = format_double(cfg.alpha);
  kv["synth_range"] = format_range(cfg.synth_range);
  kv["seed"] = std::to_string(cfg.seed);

  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

Range parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const std::size_t v = parse_count(parts[0], "range");
    return {v, v};
  }
  if (parts.size() != 2) throw Error("range must look like 'lo:hi', got '" + std::string(text) + "'");
  Range r{parse_count(parts[0], "range"), parse_count(parts[1], "range")};
  check_range(r, "range");
  return r;
}

FitRange parse_fit_range(std::string_view text) {
  text = trim(text);
  FitRange r;
  if (text.empty() || text == "all") return r;
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw Error("fit range must look like 'lo:hi', got '" + std::string(text) + "'");
  auto bound = [&](std::string_view s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    const auto v = parse_double(s);
    if (!v) throw Error("bad fit range bound '" + std::string(s) + "'");
    return v;
  };
  r.lo = bound(parts[0]);
  r.hi = bound(parts[1]);
  return r;
}

CfibPair parse_cfib_pair(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
    throw Error("CFIB pair must look like 'X0,X1', got '" + std::string(text) + "'");
  }
  return {std::string(parts[0]), std::string(parts[1])};
}

std::vector<std::size_t> parse_ladder(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto part : split(text, ',')) {
    if (!part.empty()) out.push_back(parse_count(part, "ladder"));
  }
  if (out.empty()) throw Error("empty ladder");
  return out;
}

std::string format_range(const Range& r) {
  return std::to_string(r.lo) + ":" + std::to_string(r.hi);
}

std::string format_fit_range(const FitRange& r) {
  if (!r.lo && !r.hi) return "all";
  return (r.lo ? format_double(*r.lo) : "") + ":" + (r.hi ? format_double(*r.hi) : "");
}

}  // namespace syncorr::pipeline
