#include <algorithm>
#include <limits>

#include "spot/engine/search.hpp"

namespace spot {

std::vector<int> SearchPlan::node_order() const {
  std::vector<int> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.node_id);
  return out;
}

SearchPlan plan(const ImrQuery& q, std::span<const std::size_t> counts) {
  const std::size_t n = q.nodes.size();
  std::vector<bool> placed(n, false);
  SearchPlan out;

  // Lower count wins, then lower node id.
  auto preferred = [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] < counts[b];
    return q.nodes[a].id < q.nodes[b].id;
  };

  while (out.steps.size() < n) {
    std::optional<std::size_t> pick;
    const ImrEdge* via = nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      const ImrEdge* best_edge = nullptr;
      for (const auto& e : q.edges) {
        const int other = e.src == q.nodes[i].id ? e.dst : e.dst == q.nodes[i].id ? e.src : -1;
        if (other < 0 || !placed[static_cast<std::size_t>(q.index_of(other))]) continue;
        if (!best_edge || e.max_distance_m < best_edge->max_distance_m) best_edge = &e;
      }
      if (!best_edge) continue;
      if (!pick || preferred(i, *pick)) {
        pick = i;
        via = best_edge;
      }
    }
    if (!pick) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!placed[i] && (!pick || preferred(i, *pick))) pick = i;
      }
    }

    const std::size_t i = *pick;
    PlanStep step;
    step.node_id = q.nodes[i].id;
    if (via) {
      step.source = CandidateSource::radius_probe;
      step.anchor_id = via->src == step.node_id ? via->dst : via->src;
      step.radius_m = via->max_distance_m;
    }
    for (const auto& e : q.edges) {
      const int other = e.src == step.node_id ? e.dst : e.dst == step.node_id ? e.src : -1;
      if (other >= 0 && placed[static_cast<std::size_t>(q.index_of(other))]) {
        step.checks.emplace_back(other, e.max_distance_m);
      }
    }
    placed[i] = true;
    out.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace spot
