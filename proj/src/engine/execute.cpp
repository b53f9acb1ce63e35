#include <algorithm>
#include <map>
#include <set>

#include "spot/engine/search.hpp"
#include "spot/imr/codec.hpp"

namespace spot {

FeatureStore::FeatureStore(std::vector<Feature> features, std::vector<AreaGeometry> area_file)
    : features_(std::move(features)),
      spatial_(SpatialIndex::build(features_)),
      tags_(TagIndex::build(features_)),
      areas_(features_, std::move(area_file)) {
  for (std::uint32_t i = 0; i < features_.size(); ++i) by_uid_.emplace(features_[i].uid, i);
}

const Feature* FeatureStore::find(const FeatureUid& uid) const {
  auto it = by_uid_.find(uid);
  return it == by_uid_.end() ? nullptr : &features_[it->second];
}

SearchArea resolve_search_area(const ImrQuery& q, const SearchParams& params, const AreaResolver& areas) {
  if (q.area.kind == AreaKind::named) {
    const auto& a = areas.resolve(q.area.value);
    return {a.bbox, &a};
  }
  if (!params.bbox) throw AreaRequired();
  return {*params.bbox, nullptr};
}

namespace {

/// Keeps the best `limit` spots under (span, uid tuple), one per dedup class.
/// A class ranks by its best member, so members may arrive in any order.
class TopSpots {
 public:
  using Tuple = std::vector<FeatureUid>;
  using Key = std::vector<std::pair<std::size_t, FeatureUid>>;

  explicit TopSpots(std::size_t limit) : limit_(limit) {}

  void offer(double span, Tuple tuple, Key key) {
    auto found = best_.find(key);
    if (found != best_.end()) {
      Rank& current = found->second;
      if (tuple >= current.second) return;
      ranked_.erase({current.first, current.second, key});
      current = {span, tuple};
      ranked_.insert({span, std::move(tuple), std::move(key)});
      return;
    }
    if (ranked_.size() >= limit_) {
      const auto& worst = *ranked_.rbegin();
      if (std::tie(span, tuple) >= std::tie(std::get<0>(worst), std::get<1>(worst))) return;
      best_.erase(std::get<2>(worst));
      ranked_.erase(std::prev(ranked_.end()));
    }
    best_.emplace(key, Rank{span, tuple});
    ranked_.insert({span, std::move(tuple), std::move(key)});
  }

  std::vector<std::pair<double, Tuple>> take() const {
    std::vector<std::pair<double, Tuple>> out;
    for (const auto& [span, tuple, key] : ranked_) out.emplace_back(span, tuple);
    return out;
  }

 private:
  using Rank = std::pair<double, Tuple>;
  std::size_t limit_;
  std::map<Key, Rank> best_;
  std::set<std::tuple<double, Tuple, Key>> ranked_;
};

class Join {
 public:
  Join(const SearchPlan& plan, const ImrQuery& q, const FeatureStore& store, const SearchArea& area,
       std::size_t limit, SearchStats& stats)
      : plan_(plan), q_(q), store_(store), area_(area), top_(limit), stats_(stats) {
    const auto n = q.nodes.size();
    const auto features = store.features();
    node_index_.resize(n);
    candidates_.resize(n);
    member_.assign(n, std::vector<char>(features.size(), 0));
    stats_.candidates.assign(n, 0);

    // Nodes with identical filters share a class for deduplication.
    std::map<std::string, std::size_t> classes;
    sig_class_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig_class_[i] = classes.emplace(node_signature(q.nodes[i]), classes.size()).first->second;
      for (auto pos : store.tags().candidates(q.nodes[i])) {
        if (!area.contains(features[pos].centroid)) continue;
        candidates_[i].push_back(pos);
        member_[i][pos] = 1;
      }
      stats_.candidates[i] = candidates_[i].size();
    }
    for (const auto& step : plan.steps) step_index_.push_back(static_cast<std::size_t>(q.index_of(step.node_id)));
    assigned_.assign(n, 0);
    used_.assign(features.size(), 0);
  }

  void run() { descend(0); }
  std::vector<std::pair<double, TopSpots::Tuple>> results() const { return top_.take(); }

 private:
  void descend(std::size_t depth) {
    if (depth == plan_.steps.size()) return emit();
    const auto& step = plan_.steps[depth];
    const std::size_t node = step_index_[depth];

    if (step.source == CandidateSource::radius_probe) {
      const auto anchor = assigned_[static_cast<std::size_t>(q_.index_of(step.anchor_id))];
      for (auto pos : store_.spatial().radius(store_.features()[anchor].centroid, step.radius_m)) {
        if (!member_[node][pos]) continue;
        try_candidate(depth, node, pos);
      }
    } else {
      for (auto pos : candidates_[node]) try_candidate(depth, node, pos);
    }
  }

  void try_candidate(std::size_t depth, std::size_t node, std::uint32_t pos) {
    if (depth > 0) ++stats_.examined_pairs;
    if (used_[pos]) return;
    const auto here = store_.features()[pos].centroid;
    for (const auto& [other, max_d] : plan_.steps[depth].checks) {
      const auto there = store_.features()[assigned_[static_cast<std::size_t>(q_.index_of(other))]].centroid;
      if (haversine_m(here, there) > max_d) return;
    }
    assigned_[node] = pos;
    used_[pos] = 1;
    descend(depth + 1);
    used_[pos] = 0;
  }

  void emit() {
    const auto features = store_.features();
    const auto n = q_.nodes.size();
    double span = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        span = std::max(span, haversine_m(features[assigned_[i]].centroid, features[assigned_[j]].centroid));
      }
    }
    std::vector<std::pair<int, std::size_t>> by_id;
    for (std::size_t i = 0; i < n; ++i) by_id.emplace_back(q_.nodes[i].id, i);
    std::sort(by_id.begin(), by_id.end());
    TopSpots::Tuple tuple;
    TopSpots::Key key;
    for (const auto& [id, i] : by_id) {
      tuple.push_back(features[assigned_[i]].uid);
      key.emplace_back(sig_class_[i], features[assigned_[i]].uid);
    }
    std::sort(key.begin(), key.end());
    top_.offer(span, std::move(tuple), std::move(key));
  }

  const SearchPlan& plan_;
  const ImrQuery& q_;
  const FeatureStore& store_;
  const SearchArea& area_;
  TopSpots top_;
  SearchStats& stats_;
  std::vector<std::size_t> node_index_;
  std::vector<std::size_t> step_index_;
  std::vector<std::size_t> sig_class_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<std::vector<char>> member_;
  std::vector<std::uint32_t> assigned_;
  std::vector<char> used_;
};

}  // namespace

std::vector<SpotMatch> execute(const SearchPlan& plan, const ImrQuery& q, const FeatureStore& store,
                               const SearchArea& area, const SearchParams& params, SearchStats* stats) {
  if (params.limit < 1) throw std::invalid_argument("limit must be >= 1");
  SearchStats local;
  SearchStats& s = stats ? *stats : local;
  s = {};
  Join join(plan, q, store, area, params.limit, s);
  join.run();

  std::vector<int> ids;
  for (const auto& n : q.nodes) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());

  std::vector<SpotMatch> out;
  for (auto& [span, tuple] : join.results()) {
    SpotMatch m;
    m.span_m = span;
    for (std::size_t i = 0; i < ids.size(); ++i) m.assignment.emplace_back(ids[i], tuple[i]);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<SpotMatch> search(const ImrQuery& q, const FeatureStore& store, const SearchParams& params,
                              SearchStats* stats) {
  const SearchArea area = resolve_search_area(q, params, store.areas());
  std::vector<std::size_t> counts;
  counts.reserve(q.nodes.size());
  for (const auto& n : q.nodes) {
    std::size_t c = 0;
    for (auto pos : store.tags().candidates(n)) c += area.contains(store.features()[pos].centroid) ? 1 : 0;
    counts.push_back(c);
  }
  return execute(plan(q, counts), q, store, area, params, stats);
}

}  // namespace spot
