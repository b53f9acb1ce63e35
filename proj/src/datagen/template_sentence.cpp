#include "spot/datagen/template_sentence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spot/imr/imr.hpp"
#include "spot/text.hpp"

namespace spot {

namespace {

const TagBundle* primary_bundle(const ImrNode& node, const Vocabulary& vocabulary) {
  const TagBundle* best = nullptr;
  std::size_t best_size = 0;
  for (const auto& bundle : vocabulary.bundles()) {
    if (bundle.descriptors.empty()) continue;
    const auto preds = bundle_predicates(bundle);
    const bool contained = std::all_of(preds.begin(), preds.end(), [&](const TagPredicate& p) {
      return std::find(node.filters.begin(), node.filters.end(), p) != node.filters.end();
    });
    if (contained && preds.size() > best_size) {
      best = &bundle;
      best_size = preds.size();
    }
  }
  return best;
}

}  // namespace

std::string format_distance(double meters) {
  if (meters >= 1000.0 && std::fmod(meters, 1000.0) == 0.0) return format_number(meters / 1000.0) + " km";
  return format_number(meters) + " m";
}

std::string render_template_sentence(const ImrQuery& query, const Vocabulary& vocabulary) {
  // Objects are mentioned in node id order, so the sentence follows the query as written.
  ImrQuery q = query;
  std::ranges::sort(q.nodes, {}, &ImrNode::id);
  const std::size_t n = q.nodes.size();
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(q.nodes[i].id, i);
  const auto at = [&](int id) {
    auto it = index.find(id);
    if (it == index.end()) throw NotRenderable("edge refers to unknown node " + std::to_string(id));
    return it->second;
  };

  std::vector<std::string> names;
  for (const auto& node : q.nodes) {
    const auto* bundle = primary_bundle(node, vocabulary);
    if (!bundle) throw NotRenderable("node " + std::to_string(node.id) + " matches no vocabulary bundle");
    names.push_back(bundle->descriptors.front());
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : q.edges) {
    const auto a = at(e.src), b = at(e.dst);
    adj[a].push_back({b, e.max_distance_m});
    adj[b].push_back({a, e.max_distance_m});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (adj[i].size() > 2) {
      throw NotRenderable("node " + std::to_string(q.nodes[i].id) + " has more than two distance constraints");
    }
  }

  std::vector<bool> seen(n, false);
  std::vector<std::string> parts;
  std::size_t visited = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || adj[start].size() == 2) continue;  // paths start at an end
    std::string part = "a " + names[start];
    seen[start] = true;
    ++visited;
    std::size_t cur = start;
    for (;;) {
      const auto next = std::find_if(adj[cur].begin(), adj[cur].end(),
                                     [&](const auto& nb) { return !seen[nb.first]; });
      if (next == adj[cur].end()) break;
      cur = next->first;
      part += " within " + format_distance(next->second) + " of a " + names[cur];
      seen[cur] = true;
      ++visited;
    }
    parts.push_back(std::move(part));
  }
  if (visited != n) throw NotRenderable("distance constraints form a cycle");

  std::string sentence = "Find ";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) sentence += " and ";
    sentence += parts[i];
  }
  if (q.area.kind == AreaKind::named) sentence += " in " + q.area.value;
  return sentence;
}

}  // namespace spot
