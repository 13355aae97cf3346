#include "syncorr/pcfg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "syncorr/error.hpp"
#include "syncorr/format.hpp"

namespace syncorr {

namespace {

constexpr double kSumTolerance = 1e-9;

bool rule_less(const Rule& a, const Rule& b) {
  if (a.lhs != b.lhs) return a.lhs < b.lhs;
  return a.rhs < b.rhs;
}

void check_probability(double p, const std::string& what) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error("probability of " + what + " must be in (0, 1], got " + format_double(p));
  }
}

std::string describe(const Rule& r) {
  std::string s = r.lhs + " ->";
  for (const auto& x : r.rhs) s += " " + x;
  return s;
}

std::size_t pick(const std::vector<double>& cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                               cumulative.size() - 1);
}

}  // namespace

Pcfg::Pcfg(std::vector<Rule> rules, std::vector<RootWeight> roots)
    : rules_(std::move(rules)), roots_(std::move(roots)) {
  if (rules_.empty()) throw Error("grammar has no rules");
  if (roots_.empty()) throw Error("grammar has no root distribution");
  std::sort(rules_.begin(), rules_.end(), rule_less);
  std::sort(roots_.begin(), roots_.end(),
            [](const RootWeight& a, const RootWeight& b) { return a.label < b.label; });

  for (std::size_t i = 0; i < rules_.size();) {
    std::size_t j = i;
    double sum = 0.0;
    for (; j < rules_.size() && rules_[j].lhs == rules_[i].lhs; ++j) {
      const Rule& r = rules_[j];
      if (r.lhs.empty() || r.rhs.empty()) throw Error("rule with empty side");
      check_probability(r.probability, "rule " + describe(r));
      if (j > i && rules_[j - 1].rhs == r.rhs) throw Error("duplicate rule " + describe(r));
      sum += r.probability;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw Error("rule probabilities for " + rules_[i].lhs + " sum to " + format_double(sum));
    }
    ranges_.emplace(rules_[i].lhs, std::make_pair(i, j));
    i = j;
  }

  double root_sum = 0.0;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    const RootWeight& r = roots_[i];
    check_probability(r.probability, "root " + r.label);
    if (i > 0 && roots_[i - 1].label == r.label) throw Error("duplicate root " + r.label);
    if (!ranges_.contains(r.label)) throw Error("root " + r.label + " has no rules");
    root_sum += r.probability;
  }
  if (std::abs(root_sum - 1.0) > kSumTolerance) {
    throw Error("root probabilities sum to " + format_double(root_sum));
  }

  for (const Rule& r : rules_) {
    for (const auto& x : r.rhs) {
      if (x != kTerminal && !ranges_.contains(x)) {
        throw Error("category " + x + " in rule " + describe(r) + " has no rules");
      }
    }
  }
}

std::vector<std::string> Pcfg::nonterminals() const {
  std::vector<std::string> out;
  for (const auto& [lhs, range] : ranges_) out.push_back(lhs);
  return out;
}

std::span<const Rule> Pcfg::rules_for(std::string_view lhs) const {
  auto it = ranges_.find(lhs);
  if (it == ranges_.end()) return {};
  return std::span<const Rule>(rules_).subspan(it->second.first,
                                               it->second.second - it->second.first);
}

double Pcfg::probability(std::string_view lhs, std::span<const std::string> rhs) const {
  for (const Rule& r : rules_for(lhs)) {
    if (std::equal(r.rhs.begin(), r.rhs.end(), rhs.begin(), rhs.end())) return r.probability;
  }
  return 0.0;
}

Pcfg extract_rules(std::span<const ParseTree> trees) {
  if (trees.empty()) throw Error("cannot extract a grammar from an empty corpus");
  std::map<std::pair<std::string, std::vector<std::string>>, std::uint64_t> rule_counts;
  std::map<std::string, std::uint64_t> lhs_counts;
  std::map<std::string, std::uint64_t> root_counts;
  for (const ParseTree& tree : trees) {
    ++root_counts[tree.label(tree.root())];
    for (NodeId id = 0; id < tree.size(); ++id) {
      if (tree.is_terminal(id)) continue;
      std::vector<std::string> rhs;
      for (NodeId c : tree.children(id)) {
        rhs.emplace_back(tree.is_terminal(c) ? std::string(Pcfg::kTerminal) : tree.label(c));
      }
      ++rule_counts[{tree.label(id), std::move(rhs)}];
      ++lhs_counts[tree.label(id)];
    }
  }
  std::vector<Rule> rules;
  for (auto& [key, n] : rule_counts) {
    rules.push_back({key.first, key.second,
                     static_cast<double>(n) / static_cast<double>(lhs_counts[key.first])});
  }
  std::vector<RootWeight> roots;
  for (const auto& [label, n] : root_counts) {
    roots.push_back({label, static_cast<double>(n) / static_cast<double>(trees.size())});
  }
  return Pcfg(std::move(rules), std::move(roots));
}

std::string write_grammar(const Pcfg& grammar) {
  std::string out;
  for (const RootWeight& r : grammar.roots()) {
    out += "@root " + r.label + " : " + format_double(r.probability) + "\n";
  }
  for (const Rule& r : grammar.rules()) {
    out += describe(r) + " : " + format_double(r.probability) + "\n";
  }
  return out;
}

Pcfg parse_grammar(std::string_view text) {
  std::vector<Rule> rules;
  std::vector<RootWeight> roots;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const std::size_t colon = line.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("missing ': probability'", line_no, 1);
    const auto p = parse_double(line.substr(colon + 1));
    if (!p) throw ParseError("bad probability", line_no, colon + 2);

    std::vector<std::string> words;
    std::istringstream in{std::string(line.substr(0, colon))};
    for (std::string w; in >> w;) words.push_back(std::move(w));

    if (!words.empty() && words[0] == "@root") {
      if (words.size() != 2) throw ParseError("expected '@root LABEL : p'", line_no, 1);
      roots.push_back({words[1], *p});
      continue;
    }
    if (words.size() < 3 || words[1] != "->") {
      throw ParseError("expected 'lhs -> rhs... : p'", line_no, 1);
    }
    rules.push_back({words[0], {words.begin() + 2, words.end()}, *p});
  }
  return Pcfg(std::move(rules), std::move(roots));
}

Pcfg read_grammar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open grammar file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_grammar(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line(), e.column());
  }
}

PcfgSampler::PcfgSampler(const Pcfg& grammar) {
  std::unordered_map<std::string, std::int32_t> ids;
  for (const auto& [lhs, range] : grammar.ranges_) {
    ids.emplace(lhs, static_cast<std::int32_t>(names_.size()));
    names_.push_back(lhs);
  }
  choices_.resize(names_.size());
  for (const auto& [lhs, range] : grammar.ranges_) {
    Choice& c = choices_[static_cast<std::size_t>(ids.at(lhs))];
    double acc = 0.0;
    for (std::size_t i = range.first; i < range.second; ++i) {
      const Rule& r = grammar.rules_[i];
      acc += r.probability;
      c.cumulative.push_back(acc);
      std::vector<std::int32_t> rhs;
      for (const auto& x : r.rhs) rhs.push_back(x == Pcfg::kTerminal ? -1 : ids.at(x));
      c.rhs.push_back(std::move(rhs));
    }
  }
  double acc = 0.0;
  for (const RootWeight& r : grammar.roots_) {
    acc += r.probability;
    root_cumulative_.push_back(acc);
    root_symbols_.push_back(ids.at(r.label));
  }
}

SampleOutcome PcfgSampler::sample(Rng& rng, const SampleOptions& options) const {
  if (options.max_iterations == 0) throw Error("max_iterations must be at least 1");
  SampleOutcome out;
  std::vector<Node> nodes;
  std::vector<std::int32_t> symbol;  // per node; -1 for terminals
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;

  const std::int32_t root = root_symbols_[pick(root_cumulative_, rng.uniform() * root_cumulative_.back())];
  nodes.push_back({names_[static_cast<std::size_t>(root)], {}, false});
  symbol.push_back(root);
  frontier.push_back(0);

  while (!frontier.empty()) {
    if (out.iterations == options.max_iterations) {
      out.status = SampleStatus::iteration_cap;
      return out;
    }
    ++out.iterations;
    next.clear();
    for (NodeId id : frontier) {
      const Choice& c = choices_[static_cast<std::size_t>(symbol[id])];
      const auto& rhs = c.rhs[pick(c.cumulative, rng.uniform() * c.cumulative.back())];
      if (nodes.size() + rhs.size() > options.node_cap) {
        out.status = SampleStatus::node_cap;
        return out;
      }
      for (std::int32_t s : rhs) {
        const auto child = static_cast<NodeId>(nodes.size());
        if (s < 0) {
          nodes.push_back({std::string(Pcfg::kTerminal), {}, true});
        } else {
          nodes.push_back({names_[static_cast<std::size_t>(s)], {}, false});
          next.push_back(child);
        }
        symbol.push_back(s);
        nodes[id].children.push_back(child);
      }
    }
    frontier.swap(next);
  }
  out.tree.emplace(std::move(nodes), 0);
  return out;
}

SampleOutcome sample_tree(const Pcfg& grammar, const SampleOptions& options, std::uint64_t seed) {
  Rng rng(seed);
  return PcfgSampler(grammar).sample(rng, options);
}

GenerationReport generate_corpus(const Pcfg& grammar, std::size_t attempts,
                                 const SampleOptions& options, std::uint64_t seed,
                                 const std::function<void(ParseTree&&)>& sink) {
  if (attempts == 0) throw Error("attempts must be at least 1");
  const PcfgSampler sampler(grammar);
  GenerationReport report;
  report.seed = seed;
  report.max_iterations = options.max_iterations;
  report.node_cap = options.node_cap;
  report.attempts = attempts;
  for (std::size_t i = 0; i < attempts; ++i) {
    Rng rng(mix_seed(seed, i));
    SampleOutcome outcome = sampler.sample(rng, options);
    switch (outcome.status) {
      case SampleStatus::terminated: {
        ++report.terminated;
        ++report.size_histogram[outcome.tree->terminals().size()];
        sink(std::move(*outcome.tree));
        break;
      }
      case SampleStatus::iteration_cap: ++report.discarded_iterations; break;
      case SampleStatus::node_cap: ++report.discarded_nodes; break;
    }
  }
  return report;
}

GeneratedCorpus generate_corpus(const Pcfg& grammar, std::size_t attempts,
                                const SampleOptions& options, std::uint64_t seed) {
  GeneratedCorpus out;
  out.report = generate_corpus(grammar, attempts, options, seed,
                               [&](ParseTree&& t) { out.trees.push_back(std::move(t)); });
  return out;
}

std::map<std::string, double> total_variation(const Pcfg& a, const Pcfg& b) {
  std::map<std::string, double> out;
  auto lhs_set = a.nonterminals();
  for (auto& x : b.nonterminals()) lhs_set.push_back(std::move(x));
  std::sort(lhs_set.begin(), lhs_set.end());
  lhs_set.erase(std::unique(lhs_set.begin(), lhs_set.end()), lhs_set.end());
  for (const auto& lhs : lhs_set) {
    const auto ra = a.rules_for(lhs);
    const auto rb = b.rules_for(lhs);
    if (ra.empty() || rb.empty()) {
      out[lhs] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (const Rule& r : ra) sum += std::abs(r.probability - b.probability(lhs, r.rhs));
    for (const Rule& r : rb) {
      if (a.probability(lhs, r.rhs) == 0.0) sum += r.probability;
    }
    out[lhs] = 0.5 * sum;
  }
  std::map<std::string, double> pa;
  std::map<std::string, double> pb;
  for (const auto& r : a.roots()) pa[r.label] = r.probability;
  for (const auto& r : b.roots()) pb[r.label] = r.probability;
  double root_sum = 0.0;
  for (const auto& [label, p] : pa) root_sum += std::abs(p - (pb.contains(label) ? pb[label] : 0.0));
  for (const auto& [label, p] : pb) {
    if (!pa.contains(label)) root_sum += p;
  }
  out["@root"] = 0.5 * root_sum;
  return out;
}

}  // namespace syncorr
