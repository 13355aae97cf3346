#include "syncorr/information.hpp"

#include <unordered_map>

#include "syncorr/error.hpp"

namespace syncorr {

std::string_view to_string(DistanceKind kind) {
  return kind == DistanceKind::sequential ? "sequential" : "structural";
}

MiEstimate mutual_information(const CountTable& joint, Estimator estimator) {
  if (joint.total() == 0) throw Error("mutual information of an empty sample");
  CountTable first;
  CountTable second;
  for (const auto& [key, n] : joint.counts()) {
    first.add(CountTable::high(key), n);
    second.add(CountTable::low(key), n);
  }
  const EntropyEstimate s0 = estimate_entropy(first, estimator);
  const EntropyEstimate s1 = estimate_entropy(second, estimator);
  const EntropyEstimate s01 = estimate_entropy(joint, estimator);
  MiEstimate out;
  out.value = s0.nats + s1.nats - s01.nats;
  out.estimator = estimator;
  out.n_data = joint.total();
  out.reliable = s0.reliable && s1.reliable && s01.reliable;
  return out;
}

MiEstimate mutual_information(std::span<const SymbolPair> pairs, Estimator estimator) {
  CountTable joint;
  for (const SymbolPair& p : pairs) joint.add(CountTable::pack(p.x0, p.x1));
  return mutual_information(joint, estimator);
}

MiEstimate mutual_information(std::span<const NodePair> pairs, Estimator estimator) {
  CountTable joint;
  for (const NodePair& p : pairs) joint.add(CountTable::pack(p.x0, p.x1));
  return mutual_information(joint, estimator);
}

ChildQuad child_quad(const Corpus& corpus, const NodePair& pair) {
  const IndexedTree& ix = corpus.index(pair.tree);
  const ParseTree& tree = corpus.tree(pair.tree);
  const auto& ca = tree.children(pair.a);
  const auto& cb = tree.children(pair.b);
  if (ca.size() != 2 || cb.size() != 2) {
    throw Error("CFIB needs nodes with exactly two children; is the corpus binarized?");
  }
  return {ix.label[ca[0]], ix.label[ca[1]], ix.label[cb[0]], ix.label[cb[1]]};
}

MiEstimate cfib_from_children(std::span<const ChildQuad> quads, Estimator estimator) {
  std::unordered_map<std::uint64_t, std::uint32_t> composite;
  auto intern = [&](Symbol y, Symbol z) {
    auto [it, inserted] =
        composite.try_emplace(CountTable::pack(y, z), static_cast<std::uint32_t>(composite.size()));
    return it->second;
  };
  CountTable joint;
  for (const ChildQuad& q : quads) {
    const std::uint32_t c0 = intern(q.y0, q.z0);
    const std::uint32_t c1 = intern(q.y1, q.z1);
    joint.add(CountTable::pack(c0, c1));
  }
  return mutual_information(joint, estimator);
}

CfibEstimate cfib(const Corpus& corpus, std::span<const NodePair> pairs, Estimator estimator) {
  if (pairs.empty()) throw Error("CFIB of an empty sample");
  const Symbol x0 = pairs.front().x0;
  const Symbol x1 = pairs.front().x1;
  std::vector<ChildQuad> quads;
  quads.reserve(pairs.size());
  for (const NodePair& p : pairs) {
    if (p.x0 != x0 || p.x1 != x1) throw Error("CFIB sample mixes condition labels");
    quads.push_back(child_quad(corpus, p));
  }
  const MiEstimate mi = cfib_from_children(quads, estimator);
  CfibEstimate out;
  out.value = mi.value;
  out.x0 = corpus.symbols().name(x0);
  out.x1 = corpus.symbols().name(x1);
  out.estimator = estimator;
  out.n_data = mi.n_data;
  out.reliable = mi.reliable;
  return out;
}

}  // namespace syncorr
