#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "syncorr/information.hpp"

namespace syncorr {

// Two binary symbols X, Y with correlation delta(r):
// exponential delta = exp(-lambda r / 2), power law delta = r^(-alpha / 2).
struct SyntheticModel {
  enum class Kind { exponential, power_law };

  Kind kind = Kind::exponential;
  double parameter = 0.1;

  // Throws if the parameter is not positive or r < 1.
  double delta(double r) const;
};

std::string_view to_string(SyntheticModel::Kind kind);
SyntheticModel::Kind parse_synthetic_kind(std::string_view text);

// Row-major P(X=x, Y=y): {P00, P01, P10, P11}.
using JointTable = std::array<double, 4>;

JointTable joint_probs(double delta);
JointTable joint_probs(const SyntheticModel& m, double r);

// (1+d)/2 ln(1+d) + (1-d)/2 ln(1-d), with 0 ln 0 = 0.
double exact_mi(double delta);
double exact_mi(const SyntheticModel& m, double r);

// n_data i.i.d. draws of (X, Y) as symbol pairs over {0, 1}.
std::vector<SymbolPair> sample_synthetic_pairs(const SyntheticModel& m, double r,
                                               std::size_t n_data, std::uint64_t seed);

// Default evaluation grid r = 1..100.
std::vector<double> default_synthetic_grid();

}  // namespace syncorr
