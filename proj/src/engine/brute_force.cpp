#include <algorithm>
#include <map>

#include "spot/engine/search.hpp"
#include "spot/imr/codec.hpp"

namespace spot {

std::vector<SpotMatch> brute_force(const ImrQuery& q, std::span<const Feature> features, const SearchArea& area,
                                   const SearchParams& params) {
  if (q.nodes.size() > kBruteForceMaxNodes || features.size() > kBruteForceMaxFeatures) {
    throw GuardViolation("brute force limited to " + std::to_string(kBruteForceMaxNodes) + " nodes and " +
                         std::to_string(kBruteForceMaxFeatures) + " features");
  }

  // Nodes in id order, so a tuple reads directly as the uid tuple.
  std::vector<const ImrNode*> nodes;
  for (const auto& n : q.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  const std::size_t k = nodes.size();
  auto slot_of = [&](int id) {
    for (std::size_t i = 0; i < k; ++i) {
      if (nodes[i]->id == id) return i;
    }
    return k;
  };

  std::vector<std::vector<std::size_t>> matching(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t f = 0; f < features.size(); ++f) {
      if (nodes[i]->matches(features[f].tags) && area.contains(features[f].centroid)) matching[i].push_back(f);
    }
  }

  struct Found {
    double span;
    std::vector<FeatureUid> tuple;
  };
  std::vector<Found> all;
  std::vector<std::size_t> pick(k);

  auto accept = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (pick[i] == pick[j]) return;
      }
    }
    for (const auto& e : q.edges) {
      const auto a = features[pick[slot_of(e.src)]].centroid;
      const auto b = features[pick[slot_of(e.dst)]].centroid;
      if (haversine_m(a, b) > e.max_distance_m) return;
    }
    Found f{0.0, {}};
    for (std::size_t i = 0; i < k; ++i) {
      f.tuple.push_back(features[pick[i]].uid);
      for (std::size_t j = 0; j < i; ++j) {
        f.span = std::max(f.span, haversine_m(features[pick[i]].centroid, features[pick[j]].centroid));
      }
    }
    all.push_back(std::move(f));
  };

  auto enumerate = [&](auto&& self, std::size_t i) -> void {
    if (i == k) return accept();
    for (auto f : matching[i]) {
      pick[i] = f;
      self(self, i + 1);
    }
  };
  enumerate(enumerate, 0);

  // Duplicates: same multiset of (filter signature, feature); keep the
  // smallest uid tuple.
  std::map<std::vector<std::pair<std::string, FeatureUid>>, Found> unique;
  for (auto& f : all) {
    std::vector<std::pair<std::string, FeatureUid>> key;
    for (std::size_t i = 0; i < k; ++i) key.emplace_back(node_signature(*nodes[i]), f.tuple[i]);
    std::sort(key.begin(), key.end());
    auto [it, inserted] = unique.emplace(std::move(key), f);
    if (!inserted && f.tuple < it->second.tuple) it->second = std::move(f);
  }

  std::vector<Found> ranked;
  for (auto& [key, f] : unique) ranked.push_back(std::move(f));
  std::sort(ranked.begin(), ranked.end(),
            [](const Found& a, const Found& b) { return std::tie(a.span, a.tuple) < std::tie(b.span, b.tuple); });
  if (ranked.size() > params.limit) ranked.resize(params.limit);

  std::vector<SpotMatch> out;
  for (auto& f : ranked) {
    SpotMatch m;
    m.span_m = f.span;
    for (std::size_t i = 0; i < k; ++i) m.assignment.emplace_back(nodes[i]->id, f.tuple[i]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace spot
