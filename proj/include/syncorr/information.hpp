#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "syncorr/corpus.hpp"
#include "syncorr/count_table.hpp"
#include "syncorr/estimators.hpp"
#include "syncorr/pairs.hpp"

namespace syncorr {

enum class DistanceKind { sequential, structural };

std::string_view to_string(DistanceKind kind);

struct SymbolPair {
  Symbol x0;
  Symbol x1;

  bool operator==(const SymbolPair&) const = default;
};

struct MiEstimate {
  // Stored unclamped; bias-corrected estimators may return small negatives.
  double value = 0.0;
  Estimator estimator = Estimator::grassberger;
  std::size_t n_data = 0;
  std::size_t distance = 0;
  DistanceKind distance_kind = DistanceKind::sequential;
  bool reliable = true;
};

// S0 + S1 - S01 from a joint table keyed by CountTable::pack(x0, x1).
MiEstimate mutual_information(const CountTable& joint, Estimator estimator);
// Throws on an empty sample.
MiEstimate mutual_information(std::span<const SymbolPair> pairs, Estimator estimator);
MiEstimate mutual_information(std::span<const NodePair> pairs, Estimator estimator);

// Labels of the two children of each node in a pair: (y0, z0) under the
// first node, (y1, z1) under the second.
struct ChildQuad {
  Symbol y0;
  Symbol z0;
  Symbol y1;
  Symbol z1;

  bool operator==(const ChildQuad&) const = default;
};

struct CfibEstimate {
  double value = 0.0;
  std::string x0;
  std::string x1;
  Estimator estimator = Estimator::grassberger;
  std::size_t n_data = 0;
  std::size_t r_str = 0;
  bool reliable = true;
};

// Child labels of a pair; throws if either node does not have exactly two
// children (the corpus was not binarized).
ChildQuad child_quad(const Corpus& corpus, const NodePair& pair);

// MI between the composite symbols (y0, z0) and (y1, z1).
MiEstimate cfib_from_children(std::span<const ChildQuad> quads, Estimator estimator);

// CFIB for pairs that all carry the same labels (x0, x1). Throws on an
// empty sample, on mixed labels and on non-binary nodes.
CfibEstimate cfib(const Corpus& corpus, std::span<const NodePair> pairs, Estimator estimator);

}  // namespace syncorr
