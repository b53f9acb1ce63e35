#include "spot/imr/score.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "spot/imr/canonical.hpp"
#include "spot/imr/codec.hpp"

namespace spot {

namespace {

constexpr double kEps = 1e-12;

using PredicateSet = std::set<std::string>;

PredicateSet predicate_set(const ImrNode& n) {
  PredicateSet s;
  for (const auto& p : n.filters) s.insert(predicate_signature(p));
  return s;
}

double jaccard(const PredicateSet& a, const PredicateSet& b) {
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// mapping[i] = gold node index aligned to predicted node i, or -1.
std::size_t count_edge_matches(const ImrQuery& pred, const ImrQuery& gold, const std::vector<int>& mapping) {
  std::map<std::pair<int, int>, double> gold_edges;
  for (const auto& e : gold.edges) {
    gold_edges[std::minmax(gold.index_of(e.src), gold.index_of(e.dst))] = e.max_distance_m;
  }
  std::size_t tp = 0;
  for (const auto& e : pred.edges) {
    const int a = mapping[static_cast<std::size_t>(pred.index_of(e.src))];
    const int b = mapping[static_cast<std::size_t>(pred.index_of(e.dst))];
    if (a < 0 || b < 0) continue;
    auto it = gold_edges.find(std::minmax(a, b));
    if (it == gold_edges.end()) continue;
    if (std::abs(e.max_distance_m - it->second) <= kEdgeDistanceTolerance * it->second) ++tp;
  }
  return tp;
}

struct Alignment {
  std::vector<int> mapping;
  double jaccard_sum = 0.0;
  std::size_t edge_tp = 0;
};

bool better(double jac, std::size_t tp, const Alignment& best) {
  if (jac > best.jaccard_sum + kEps) return true;
  if (jac < best.jaccard_sum - kEps) return false;
  return tp > best.edge_tp;
}

Alignment align_exhaustive(const ImrQuery& pred, const ImrQuery& gold, const std::vector<std::vector<double>>& sim) {
  const std::size_t np = pred.nodes.size();
  const std::size_t ng = gold.nodes.size();
  Alignment best;
  best.mapping.assign(np, -1);
  best.jaccard_sum = -1.0;

  std::vector<int> mapping(np, -1);
  std::vector<bool> used(ng, false);
  const std::size_t assignable = std::min(np, ng);

  // Each predicted node maps to a distinct gold node or stays unmapped, with
  // exactly min(np, ng) mapped: extra nodes on either side cannot add weight.
  auto recurse = [&](auto&& self, std::size_t i, std::size_t mapped, double acc) -> void {
    if (i == np) {
      if (mapped != assignable) return;
      const auto tp = count_edge_matches(pred, gold, mapping);
      if (better(acc, tp, best)) best = {mapping, acc, tp};
      return;
    }
    if (np - i > assignable - mapped) {
      mapping[i] = -1;
      self(self, i + 1, mapped, acc);
    }
    if (mapped < assignable) {
      for (std::size_t g = 0; g < ng; ++g) {
        if (used[g]) continue;
        used[g] = true;
        mapping[i] = static_cast<int>(g);
        self(self, i + 1, mapped + 1, acc + sim[i][g]);
        used[g] = false;
      }
      mapping[i] = -1;
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return best;
}

Alignment align_greedy(const ImrQuery& pred, const ImrQuery& gold, const std::vector<std::vector<double>>& sim) {
  const std::size_t np = pred.nodes.size();
  const std::size_t ng = gold.nodes.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t g = 0; g < ng; ++g) pairs.emplace_back(-sim[i][g], i, g);
  }
  std::sort(pairs.begin(), pairs.end());
  Alignment a;
  a.mapping.assign(np, -1);
  std::vector<bool> used(ng, false);
  for (const auto& [neg, i, g] : pairs) {
    if (a.mapping[i] >= 0 || used[g]) continue;
    a.mapping[i] = static_cast<int>(g);
    used[g] = true;
    a.jaccard_sum += -neg;
  }
  a.edge_tp = count_edge_matches(pred, gold, a.mapping);
  return a;
}

}  // namespace

SemanticScore semantic_score(const ImrQuery& predicted, const ImrQuery& gold) {
  const ImrQuery pred = canonicalize(predicted);
  const ImrQuery ref = canonicalize(gold);

  SemanticScore s;
  s.area = pred.area == ref.area ? 1 : 0;

  std::vector<std::vector<double>> sim(pred.nodes.size(), std::vector<double>(ref.nodes.size()));
  for (std::size_t i = 0; i < pred.nodes.size(); ++i) {
    const auto a = predicate_set(pred.nodes[i]);
    for (std::size_t g = 0; g < ref.nodes.size(); ++g) sim[i][g] = jaccard(a, predicate_set(ref.nodes[g]));
  }
  const bool exhaustive = std::max(pred.nodes.size(), ref.nodes.size()) <= kExhaustiveAlignmentMax;
  const Alignment al = exhaustive ? align_exhaustive(pred, ref, sim) : align_greedy(pred, ref, sim);

  const double total_nodes = static_cast<double>(pred.nodes.size() + ref.nodes.size());
  s.node_f1 = total_nodes == 0.0 ? 1.0 : 2.0 * al.jaccard_sum / total_nodes;

  const std::size_t edges = pred.edges.size() + ref.edges.size();
  s.edge_f1 = edges == 0 ? 1.0 : 2.0 * static_cast<double>(al.edge_tp) / static_cast<double>(edges);

  s.overall = (static_cast<double>(s.area) + s.node_f1 + s.edge_f1) / 3.0;
  s.exact = same_query(predicted, gold);
  return s;
}

}  // namespace spot
