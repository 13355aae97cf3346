#include "syncorr/synthetic.hpp"

#include <cmath>
#include <string>

#include "syncorr/error.hpp"
#include "syncorr/rng.hpp"

namespace syncorr {

double SyntheticModel::delta(double r) const {
  if (!(parameter > 0.0)) throw Error("synthetic model parameter must be positive");
  if (!(r >= 1.0)) throw Error("synthetic model distance must be at least 1");
  return kind == Kind::exponential ? std::exp(-parameter * r / 2.0)
                                   : std::pow(r, -parameter / 2.0);
}

std::string_view to_string(SyntheticModel::Kind kind) {
  return kind == SyntheticModel::Kind::exponential ? "exponential" : "power_law";
}

SyntheticModel::Kind parse_synthetic_kind(std::string_view text) {
  if (text == "exponential" || text == "exp") return SyntheticModel::Kind::exponential;
  if (text == "power_law" || text == "power" || text == "pow") return SyntheticModel::Kind::power_law;
  throw Error("unknown synthetic model '" + std::string(text) + "'");
}

JointTable joint_probs(double delta) {
  const double same = (1.0 + delta) / 4.0;
  const double diff = (1.0 - delta) / 4.0;
  return {same, diff, diff, same};
}

JointTable joint_probs(const SyntheticModel& m, double r) { return joint_probs(m.delta(r)); }

double exact_mi(double delta) {
  if (delta >= 1.0) return std::log(2.0);
  if (delta <= 0.0) return 0.0;
  return 0.5 * (1.0 + delta) * std::log1p(delta) + 0.5 * (1.0 - delta) * std::log1p(-delta);
}

double exact_mi(const SyntheticModel& m, double r) { return exact_mi(m.delta(r)); }

std::vector<SymbolPair> sample_synthetic_pairs(const SyntheticModel& m, double r,
                                               std::size_t n_data, std::uint64_t seed) {
  if (n_data == 0) throw Error("n_data must be at least 1");
  const double same = (1.0 + m.delta(r)) / 2.0;
  Rng rng(seed);
  std::vector<SymbolPair> out;
  out.reserve(n_data);
  for (std::size_t i = 0; i < n_data; ++i) {
    const Symbol x = rng.uniform() < 0.5 ? 0 : 1;
    const Symbol y = rng.uniform() < same ? x : 1 - x;
    out.push_back({x, y});
  }
  return out;
}

std::vector<double> default_synthetic_grid() {
  std::vector<double> out;
  for (int r = 1; r <= 100; ++r) out.push_back(r);
  return out;
}

}  // namespace syncorr
