#pragma once

#include <string_view>
#include <vector>

#include "syncorr/count_table.hpp"

namespace syncorr {

enum class Estimator { plugin, grassberger, miller_madow, zahl, chao_shen, horvitz_thompson };

inline constexpr Estimator kAllEstimators[] = {
    Estimator::plugin,    Estimator::grassberger, Estimator::miller_madow,
    Estimator::zahl,      Estimator::chao_shen,   Estimator::horvitz_thompson,
};

// Short names used in files and on the command line: plugin, gr, mm, za, cs, ht.
std::string_view to_string(Estimator estimator);
// Accepts the short names and the long forms (e.g. "grassberger").
Estimator parse_estimator(std::string_view text);
std::vector<Estimator> parse_estimators(std::string_view comma_list);

// Entropy in nats. `reliable` is false when the estimator's correction
// degenerates (Chao-Shen on an all-singleton table).
struct EntropyEstimate {
  double nats = 0.0;
  bool reliable = true;
};

// All functions throw on an empty table.
double plugin_entropy(const CountTable& t);
double grassberger_entropy(const CountTable& t);
double miller_madow_entropy(const CountTable& t);
double zahl_jackknife_entropy(const CountTable& t);
EntropyEstimate chao_shen_entropy(const CountTable& t);
double horvitz_thompson_entropy(const CountTable& t);

EntropyEstimate estimate_entropy(const CountTable& t, Estimator estimator);

}  // namespace syncorr
