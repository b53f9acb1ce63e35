#include "spot/imr/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "spot/imr/codec.hpp"

namespace spot {

namespace {

using EdgeKey = std::tuple<int, int, double>;

// Permutation search over tied groups is exhaustive up to this many orderings.
constexpr std::size_t kMaxTieOrderings = 5040;

std::vector<EdgeKey> renumbered_edges(const ImrQuery& q, const std::vector<int>& new_id_of_index) {
  std::vector<EdgeKey> out;
  out.reserve(q.edges.size());
  for (const auto& e : q.edges) {
    const int a = new_id_of_index[static_cast<std::size_t>(q.index_of(e.src))];
    const int b = new_id_of_index[static_cast<std::size_t>(q.index_of(e.dst))];
    out.emplace_back(std::min(a, b), std::max(a, b), e.max_distance_m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t factorial_capped(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > kMaxTieOrderings) return kMaxTieOrderings + 1;
  }
  return f;
}

}  // namespace

ImrQuery canonicalize(const ImrQuery& input) {
  ImrQuery q = input;
  for (auto& n : q.nodes) {
    for (auto& p : n.filters) {
      if (p.op == PredicateOp::one_of) std::sort(p.values.begin(), p.values.end());
    }
    std::sort(n.filters.begin(), n.filters.end());
  }

  const std::size_t n = q.nodes.size();
  std::vector<std::string> sig(n);
  for (std::size_t i = 0; i < n; ++i) sig[i] = node_signature(q.nodes[i]);

  // Slots in canonical order; each slot is filled by one node index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sig[a] < sig[b]; });

  std::vector<std::pair<std::size_t, std::size_t>> ties;  // [begin, end) slot ranges
  std::size_t total = 1;
  for (std::size_t b = 0; b < n;) {
    std::size_t e = b + 1;
    while (e < n && sig[order[e]] == sig[order[b]]) ++e;
    if (e - b > 1) {
      ties.emplace_back(b, e);
      total = std::min(total * factorial_capped(e - b), kMaxTieOrderings + 1);
    }
    b = e;
  }

  auto score = [&](const std::vector<std::size_t>& slots) {
    std::vector<int> new_id(n);
    for (std::size_t s = 0; s < n; ++s) new_id[slots[s]] = static_cast<int>(s);
    std::vector<std::string> names(n);
    for (std::size_t s = 0; s < n; ++s) names[s] = q.nodes[slots[s]].name;
    return std::make_pair(renumbered_edges(q, new_id), std::move(names));
  };

  if (!ties.empty() && total <= kMaxTieOrderings) {
    for (auto [b, e] : ties) std::sort(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e));
    auto best_order = order;
    auto best = score(order);
    // Odometer over the permutations of every tied range.
    while (true) {
      std::size_t t = 0;
      for (; t < ties.size(); ++t) {
        auto [b, e] = ties[t];
        if (std::next_permutation(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e))) break;
      }
      if (t == ties.size()) break;
      auto candidate = score(order);
      if (candidate < best) {
        best = std::move(candidate);
        best_order = order;
      }
    }
    order = std::move(best_order);
  } else if (!ties.empty()) {
    // Too many orderings: refine ties by each node's neighbourhood instead.
    std::vector<std::string> refined(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::string, double>> around;
      for (const auto& e : q.edges) {
        if (e.src == q.nodes[i].id) around.emplace_back(sig[static_cast<std::size_t>(q.index_of(e.dst))], e.max_distance_m);
        if (e.dst == q.nodes[i].id) around.emplace_back(sig[static_cast<std::size_t>(q.index_of(e.src))], e.max_distance_m);
      }
      std::sort(around.begin(), around.end());
      for (const auto& [s, d] : around) refined[i] += s + "@" + std::to_string(d) + ";";
      refined[i] += "#" + q.nodes[i].name;
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return std::tie(sig[a], refined[a]) < std::tie(sig[b], refined[b]);
    });
  }

  std::vector<int> new_id(n);
  for (std::size_t s = 0; s < n; ++s) new_id[order[s]] = static_cast<int>(s);

  ImrQuery out;
  out.version = q.version;
  out.area = q.area;
  out.nodes.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    out.nodes.push_back(q.nodes[order[s]]);
    out.nodes.back().id = static_cast<int>(s);
  }
  for (const auto& [a, b, d] : renumbered_edges(q, new_id)) out.edges.push_back({a, b, d});
  return out;
}

bool same_query(const ImrQuery& a, const ImrQuery& b) {
  auto strip = [](ImrQuery q) {
    for (auto& n : q.nodes) n.name.clear();
    return canonicalize(q);
  };
  return strip(a) == strip(b);
}

}  // namespace spot
