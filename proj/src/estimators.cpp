#include "syncorr/estimators.hpp"

#include <cmath>
#include <string>

#include "syncorr/digamma.hpp"
#include "syncorr/error.hpp"

namespace syncorr {

namespace {

std::vector<std::uint64_t> checked_counts(const CountTable& t) {
  if (t.total() == 0) throw Error("entropy of an empty count table");
  return t.sorted_counts();
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Plug-in entropy written as ln M - (1/M) sum n ln n.
double plugin_from_sum(double total, double sum_nlogn) {
  return std::log(total) - sum_nlogn / total;
}

// -sum p ln p / (1 - (1-p)^N) with p = scale * n / N.
double coverage_weighted(const std::vector<std::uint64_t>& counts, double total, double scale) {
  double h = 0.0;
  for (std::uint64_t n : counts) {
    const double p = scale * static_cast<double>(n) / total;
    const double inclusion = -std::expm1(total * std::log1p(-p));
    h -= p * std::log(p) / inclusion;
  }
  return h;
}

}  // namespace

std::string_view to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::plugin: return "plugin";
    case Estimator::grassberger: return "gr";
    case Estimator::miller_madow: return "mm";
    case Estimator::zahl: return "za";
    case Estimator::chao_shen: return "cs";
    case Estimator::horvitz_thompson: return "ht";
  }
  return "?";
}

Estimator parse_estimator(std::string_view text) {
  if (text == "plugin" || text == "ml") return Estimator::plugin;
  if (text == "gr" || text == "grassberger") return Estimator::grassberger;
  if (text == "mm" || text == "miller_madow") return Estimator::miller_madow;
  if (text == "za" || text == "zahl") return Estimator::zahl;
  if (text == "cs" || text == "chao_shen") return Estimator::chao_shen;
  if (text == "ht" || text == "horvitz_thompson") return Estimator::horvitz_thompson;
  throw Error("unknown estimator '" + std::string(text) + "'");
}

std::vector<Estimator> parse_estimators(std::string_view comma_list) {
  std::vector<Estimator> out;
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    std::size_t end = comma_list.find(',', start);
    if (end == std::string_view::npos) end = comma_list.size();
    std::string_view item = comma_list.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const Estimator e = parse_estimator(item);
      bool seen = false;
      for (Estimator x : out) seen = seen || x == e;
      if (!seen) out.push_back(e);
    }
    start = end + 1;
  }
  if (out.empty()) throw Error("empty estimator list");
  return out;
}

double plugin_entropy(const CountTable& t) {
  const auto counts = checked_counts(t);
  const double total = static_cast<double>(t.total());
  double sum = 0.0;
  for (std::uint64_t n : counts) sum += xlogx(static_cast<double>(n));
  return plugin_from_sum(total, sum);
}

double grassberger_entropy(const CountTable& t) {
  const auto counts = checked_counts(t);
  const double total = static_cast<double>(t.total());
  double sum = 0.0;
  for (std::uint64_t n : counts) {
    const double x = static_cast<double>(n);
    sum += x * digamma(x);
  }
  return digamma(total) - sum / total;
}

double miller_madow_entropy(const CountTable& t) {
  const double k = static_cast<double>(t.support());
  return plugin_entropy(t) + (k - 1.0) / (2.0 * static_cast<double>(t.total()));
}

double zahl_jackknife_entropy(const CountTable& t) {
  const auto counts = checked_counts(t);
  const double total = static_cast<double>(t.total());
  double sum = 0.0;
  for (std::uint64_t n : counts) sum += xlogx(static_cast<double>(n));
  const double h = plugin_from_sum(total, sum);
  // One symbol: every leave-one-out entropy is zero too.
  if (counts.size() == 1) return 0.0;
  // Leaving out one sample of a symbol with count n changes only that term.
  double loo = 0.0;
  for (std::uint64_t n : counts) {
    const double x = static_cast<double>(n);
    loo += x * plugin_from_sum(total - 1.0, sum - xlogx(x) + xlogx(x - 1.0));
  }
  return total * h - (total - 1.0) / total * loo;
}

EntropyEstimate chao_shen_entropy(const CountTable& t) {
  const auto counts = checked_counts(t);
  const double total = static_cast<double>(t.total());
  std::uint64_t f1 = 0;
  for (std::uint64_t n : counts) f1 += n == 1 ? 1 : 0;
  EntropyEstimate out;
  if (f1 == t.total()) {
    f1 = t.total() - 1;
    out.reliable = false;
  }
  const double coverage = 1.0 - static_cast<double>(f1) / total;
  out.nats = coverage_weighted(counts, total, coverage);
  return out;
}

double horvitz_thompson_entropy(const CountTable& t) {
  const auto counts = checked_counts(t);
  return coverage_weighted(counts, static_cast<double>(t.total()), 1.0);
}

EntropyEstimate estimate_entropy(const CountTable& t, Estimator estimator) {
  switch (estimator) {
    case Estimator::plugin: return {plugin_entropy(t), true};
    case Estimator::grassberger: return {grassberger_entropy(t), true};
    case Estimator::miller_madow: return {miller_madow_entropy(t), true};
    case Estimator::zahl: return {zahl_jackknife_entropy(t), true};
    case Estimator::chao_shen: return chao_shen_entropy(t);
    case Estimator::horvitz_thompson: return {horvitz_thompson_entropy(t), true};
  }
  throw Error("unknown estimator");
}

}  // namespace syncorr
