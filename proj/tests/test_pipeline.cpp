#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support.hpp"
#include "syncorr/error.hpp"
#include "syncorr/histogram.hpp"
#include "syncorr/information.hpp"
#include "syncorr/pcfg.hpp"
#include "syncorr/pipeline/config.hpp"
#include "syncorr/pipeline/experiments.hpp"
#include "syncorr/rng.hpp"

using namespace syncorr;
using namespace syncorr::pipeline;
namespace fs = std::filesystem;

namespace {

const fs::path kToy = fs::path(SYNCORR_TEST_DATA) / "toy.mrg";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("syncorr_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig toy_config(const std::string& name) {
  ExperimentConfig cfg = preset("english");
  cfg.corpus = {kToy};
  cfg.seq_range = {1, 3};
  cfg.str_range = {1, 4};
  cfg.cfib_range = {1, 4};
  cfg.ladder = {20, 80};
  cfg.cfib_pairs = {{"NP", "NP"}};
  cfg.out = scratch(name);
  return cfg;
}

std::size_t series_count(const nlohmann::json& report) {
  std::set<std::string> ids;
  for (const auto& f : report["fits"]) ids.insert(f["series"].get<std::string>());
  return ids.size() + report["skipped"].size();
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).generic_string()] = slurp(e.path());
  }
  return out;
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("config parsers") {
    CHECK(parse_range("3:7") == Range{3, 7});
    CHECK(parse_range("5") == Range{5, 5});
    CHECK_THROWS_AS(parse_range("7:3"), Error);
    CHECK_THROWS_AS(parse_range("0:3"), Error);
    CHECK_THROWS_AS(parse_range("a:b"), Error);
    CHECK(parse_fit_range("2:10") == FitRange{2.0, 10.0});
    CHECK(parse_fit_range(":10") == FitRange{std::nullopt, 10.0});
    CHECK(parse_fit_range("") == FitRange{});
    CHECK(format_fit_range(FitRange{}) == "all");
    CHECK(parse_fit_range(format_fit_range(FitRange{1.5, 8.0})) == FitRange{1.5, 8.0});
    CHECK(parse_cfib_pair("NP,VP") == CfibPair{"NP", "VP"});
    CHECK_THROWS_AS(parse_cfib_pair("NP"), Error);
    CHECK(parse_ladder("1e4,4e4,160000") == std::vector<std::size_t>{10000, 40000, 160000});
    CHECK_THROWS_AS(parse_ladder(""), Error);
    CHECK(format_range(parse_range("2:9")) == "2:9");
  }

  TEST_CASE("presets and validation") {
    for (const std::string& name : preset_names()) CHECK(preset(name).preset == name);
    CHECK_THROWS_AS(preset("klingon"), Error);
    const ExperimentConfig ja = preset("japanese");
    CHECK(ja.preprocess.direction == BinarizeDirection::left);
    CHECK(ja.tag_map_preset == "japanese");
    CHECK(preset("english").ladder.back() == 2'560'000);
    CHECK(preset("pcfg").ladder.back() == 8'000'000);

    ExperimentConfig cfg = preset("english");
    CHECK_NOTHROW(validate(cfg, Needs::nothing));
    CHECK_THROWS_AS(validate(cfg, Needs::corpus), Error);
    CHECK_THROWS_AS(validate(cfg, Needs::grammar), Error);
    cfg.corpus = {"/nonexistent/file.mrg"};
    CHECK_THROWS_AS(validate(cfg, Needs::corpus), Error);
    cfg = preset("english");
    cfg.ladder = {100, 50};
    CHECK_THROWS_AS(validate(cfg, Needs::nothing), Error);
    cfg = preset("english");
    cfg.seq_range = {5, 2};
    CHECK_THROWS_AS(validate(cfg, Needs::nothing), Error);
    cfg = preset("english");
    cfg.seq_fit = FitRange{10.0, 2.0};
    CHECK_THROWS_AS(validate(cfg, Needs::nothing), Error);
  }

  TEST_CASE("canonical text ignores the output directory only") {
    ExperimentConfig a = preset("english");
    ExperimentConfig b = a;
    b.out = "elsewhere";
    CHECK(canonical_text(a) == canonical_text(b));
    b.seed = 2;
    CHECK(canonical_text(a) != canonical_text(b));
    const auto ls = lines(canonical_text(a));
    CHECK(std::is_sorted(ls.begin(), ls.end()));
  }

  TEST_CASE("mi-seq on the toy corpus") {
    ExperimentConfig cfg = toy_config("mi_seq");
    const ExperimentResult res = run_mi_sequential(cfg);
    CHECK(res.files == std::vector<std::string>{"mi_seq.csv", "mi_seq_fits.json", "mi_seq_manifest.txt"});
    const auto rows = lines(slurp(cfg.out / "mi_seq.csv"));
    REQUIRE(rows.size() == 1 + 3 * 2);
    CHECK(rows[0] == "distance,distance_kind,estimator,n_data,value_nats,source,flag");
    CHECK(rows[1].rfind("1,sequential,gr,20,", 0) == 0);
    const auto fits = nlohmann::json::parse(slurp(cfg.out / "mi_seq_fits.json"));
    CHECK(fits.contains("fits"));
    CHECK(fits.contains("skipped"));
    const std::string manifest = slurp(cfg.out / "mi_seq_manifest.txt");
    CHECK(manifest.find(sha256_file(kToy)) != std::string::npos);
    CHECK(manifest.find("seed = 1") != std::string::npos);

    cfg.ladder = {40};
    cfg.seq_range = {1, 5};
    cfg.out = scratch("mi_seq_single");
    run_mi_sequential(cfg);
    CHECK(lines(slurp(cfg.out / "mi_seq.csv")).size() == 1 + 5);
    const auto single = nlohmann::json::parse(slurp(cfg.out / "mi_seq_fits.json"));
    CHECK(series_count(single) == 1);
  }

  TEST_CASE("flags on rows") {
    const Corpus corpus({testing::tree("(S (NP (DT a) (NN b)) (VP (VB c)))")});
    SamplingPlan plan{{1, 4}, {2, 10}, {Estimator::plugin}, 1, "corpus", 1000};
    const auto rows = estimate_mi(corpus, DistanceKind::sequential, NodeSelection::pos_only, plan);
    REQUIRE(rows.size() == 8);
    // Three leaves: r=1 has 4 ordered pairs, r=2 has 2, r>=3 none.
    CHECK(rows[0].flag.empty());
    CHECK(rows[1].flag == "shortfall:4");
    CHECK(rows[3].flag == "shortfall:2");
    CHECK_FALSE(rows[4].value);
    CHECK(rows[4].flag == "no_pairs");
    const FitReport report = fit_estimates(rows, "mi_seq", FitRange{}, 10);
    CHECK(report.fits.empty());
    REQUIRE(report.skipped.size() == 1);
    CHECK(report.skipped[0].first == "mi_seq/plugin");
  }

  TEST_CASE("memory budget does not change the estimates") {
    const LoadedCorpus loaded = load_corpus(toy_config("budget"));
    SamplingPlan plan{{1, 6}, {10, 30}, {Estimator::grassberger}, 7, "corpus", 1u << 20};
    const auto big = estimate_mi(loaded.corpus, DistanceKind::structural, NodeSelection::pos_and_phrasal, plan);
    plan.memory_budget = 40;
    const auto small = estimate_mi(loaded.corpus, DistanceKind::structural, NodeSelection::pos_and_phrasal, plan);
    CHECK(big == small);
  }

  TEST_CASE("growth geometry") {
    const Corpus full({testing::complete_binary(8)});
    const FitReport rep = fit_growth(distance_joint_histogram(full), "growth", FitRange{});
    REQUIRE(rep.fits.size() == 1);
    CHECK(rep.fits[0].exponential.chi2_nu < rep.fits[0].power_law.chi2_nu);
    CHECK_FALSE(rep.fits[0].exponential.log_scaled);

    for (std::size_t n : {2u, 5u, 17u, 40u}) {
      const Corpus chain({testing::right_chain(n)});
      for (const auto& [r_str, mean] : mean_seq_distance(distance_joint_histogram(chain))) {
        CHECK(mean <= r_str);
      }
    }

    const Corpus four({testing::tree("(S (NP (A a) (B b)) (VP (C c) (D d)))")});
    const auto means = mean_seq_distance(distance_joint_histogram(four));
    CHECK(means.at(2) == 1.0);
    CHECK(means.at(4) == 2.0);
  }

  TEST_CASE("CFIB agrees with brute force on a coupled corpus") {
    std::vector<ParseTree> trees;
    for (int i = 0; i < 20; ++i) {
      trees.push_back(testing::tree(i % 2 ? "(S (NP (A a) (B b)) (NP (A a) (B b)))"
                                          : "(S (NP (B b) (A a)) (NP (B b) (A a)))"));
    }
    const Corpus corpus(std::move(trees));
    SamplingPlan plan{{2, 2}, {100}, {Estimator::plugin}, 3, "corpus", 1000};
    const auto rows = estimate_cfib(corpus, {"NP", "NP"}, plan);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].flag == "shortfall:40");

    std::map<std::pair<Symbol, Symbol>, double> joint;
    std::map<Symbol, double> first;
    std::map<Symbol, double> second;
    const auto pairs = enumerate_pairs_str(corpus, 2, NodeSelection::phrasal_only);
    for (const NodePair& p : pairs) {
      const ChildQuad q = child_quad(corpus, p);
      const Symbol y = q.y0 * 1000 + q.z0;
      const Symbol z = q.y1 * 1000 + q.z1;
      joint[{y, z}] += 1;
      first[y] += 1;
      second[z] += 1;
    }
    const double n = static_cast<double>(pairs.size());
    double mi = 0.0;
    for (const auto& [k, c] : joint) mi += c / n * std::log(c * n / (first[k.first] * second[k.second]));
    CHECK(*rows[0].value == doctest::Approx(mi).epsilon(1e-12));
    CHECK(mi == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_cfib(corpus, {"VP", "NP"}, plan), Error);
    plan.range = {5, 6};
    CHECK_THROWS_AS(estimate_cfib(corpus, {"NP", "NP"}, plan), Error);
  }

  TEST_CASE("CFIB skips pairs where one node dominates the other") {
    const Corpus corpus({testing::tree("(S (NP (NP (A a) (B b)) (PP (A a) (NP (B b) (A a)))) (VP (A a) (B b)))")});
    const IndexedTree& ix = corpus.index(0);
    std::size_t vertical = 0;
    std::size_t across = 0;
    for (const NodePair& p : enumerate_pairs_str(corpus, 2, NodeSelection::phrasal_only)) {
      const bool v = on_one_branch(ix, p.a, p.b, 2);
      (v ? vertical : across) += 1;
      CHECK(v == (ix.depth[p.a] != ix.depth[p.b]));
    }
    CHECK(vertical == 6);
    CHECK(across == 4);

    SamplingPlan plan{{1, 1}, {10}, {Estimator::plugin}, 1, "corpus", 1000};
    CHECK_THROWS_AS(estimate_cfib(corpus, {"NP", "NP"}, plan), Error);
    plan.range = {2, 3};
    const auto rows = estimate_cfib(corpus, {"NP", "NP"}, plan);
    CHECK(rows[0].flag == "no_pairs");
    CHECK(rows[1].flag == "shortfall:2");
  }

  TEST_CASE("every analysis is deterministic and reruns are byte-identical") {
    auto run_all = [](const std::string& name, std::uint64_t seed) {
      ExperimentConfig cfg = toy_config(name);
      cfg.seed = seed;
      run_preprocess(cfg);
      run_tree_stats(cfg);
      run_mi_sequential(cfg);
      run_mi_structural(cfg);
      run_growth(cfg);
      run_cfib(cfg);
      run_pcfg_extract(cfg);
      cfg.grammar = fs::temp_directory_path() / "syncorr_test_grammar.txt";
      fs::copy_file(cfg.out / "grammar.txt", cfg.grammar, fs::copy_options::overwrite_existing);
      cfg.attempts = 200;
      run_pcfg_generate(cfg);
      cfg.synth_range = {1, 5};
      run_synthetic(cfg);
      return read_tree(cfg.out);
    };
    const auto a = run_all("det_a", 5);
    const auto b = run_all("det_b", 5);
    CHECK(a.size() >= 20);
    CHECK(a == b);
    const auto c = run_all("det_c", 6);
    CHECK(a.at("generated.mrg") != c.at("generated.mrg"));
    CHECK(a.at("mi_seq.csv") != c.at("mi_seq.csv"));
  }

  TEST_CASE("scheme choice shows up in the manifest") {
    ExperimentConfig cfg = toy_config("scheme_a");
    run_mi_structural(cfg);
    ExperimentConfig other = toy_config("scheme_b");
    other.preprocess.scheme = Scheme::unbinarized;
    run_mi_structural(other);
    const std::string ma = slurp(cfg.out / "mi_str_manifest.txt");
    const std::string mb = slurp(other.out / "mi_str_manifest.txt");
    CHECK(ma.find("binarized") != std::string::npos);
    CHECK(mb.find("unbinarized") != std::string::npos);
    CHECK(ma != mb);
  }

  TEST_CASE("pcfg-extract writes a grammar that reads back") {
    ExperimentConfig cfg = toy_config("extract");
    run_pcfg_extract(cfg);
    const Pcfg g = read_grammar(cfg.out / "grammar.txt");
    CHECK_FALSE(g.rules().empty());
    CHECK(write_grammar(g) == slurp(cfg.out / "grammar.txt"));
  }

  TEST_CASE("fit subcommand groups a CSV") {
    ExperimentConfig cfg = toy_config("fit");
    cfg.estimators = {Estimator::plugin, Estimator::grassberger};
    cfg.synth_range = {1, 30};
    cfg.ladder = {20000};
    run_synthetic(cfg);
    FitJob job;
    job.input = cfg.out / "synth.csv";
    job.group_by = {"estimator"};
    job.name = "regroup";
    const ExperimentResult res = run_fit(cfg, job);
    CHECK(std::find(res.files.begin(), res.files.end(), "regroup.json") != res.files.end());
    const auto json = nlohmann::json::parse(slurp(cfg.out / "regroup.json"));
    CHECK(series_count(json) == 2);

    job.filters = {{"estimator", "gr"}};
    job.group_by.clear();
    job.name = "only_gr";
    run_fit(cfg, job);
    const auto one = nlohmann::json::parse(slurp(cfg.out / "only_gr.json"));
    CHECK(series_count(one) == 1);

    job.y_column = "missing";
    CHECK_THROWS_AS(run_fit(cfg, job), Error);
  }

  TEST_CASE("pcfg-study runs end to end") {
    ExperimentConfig cfg = toy_config("study");
    cfg.attempts = 300;
    const ExperimentResult res = run_pcfg_study(cfg);
    const auto files = read_tree(cfg.out);
    CHECK(files.count("pcfg_grammar.txt") == 1);
    CHECK(files.count("pcfg_mi_seq.csv") == 1);
    CHECK(files.count("pcfg_cfib_NP_NP.csv") == 1);
    CHECK(files.at("pcfg_generation.txt").find("max_tv") != std::string::npos);
    CHECK(files.at("pcfg_mi_seq.csv").find(",pcfg,") != std::string::npos);
    CHECK_FALSE(res.files.empty());
  }
}
