#include <cmath>
#include <unordered_map>

#include "spot/ingest/ingest.hpp"

namespace spot {

namespace {

using NodeTable = std::unordered_map<std::int64_t, GeoPoint>;
using WayTable = std::unordered_map<std::int64_t, const RawWay*>;

std::optional<std::vector<GeoPoint>> resolve(const std::vector<std::int64_t>& refs, const NodeTable& nodes) {
  std::vector<GeoPoint> out;
  out.reserve(refs.size());
  for (auto ref : refs) {
    auto it = nodes.find(ref);
    if (it == nodes.end()) return std::nullopt;
    out.push_back(it->second);
  }
  return out;
}

std::optional<Geometry> way_geometry(const RawWay& way, const NodeTable& nodes) {
  if (way.refs.size() < 2) return std::nullopt;
  auto points = resolve(way.refs, nodes);
  if (!points) return std::nullopt;

  const bool closed = way.refs.front() == way.refs.back();
  auto area = way.tags.find("area");
  const bool area_tag = area != way.tags.end() && area->second == "yes";
  if (closed && points->size() >= 4) return PolygonGeometry{std::move(*points)};
  if (area_tag && !closed && points->size() >= 3) {
    points->push_back(points->front());
    return PolygonGeometry{std::move(*points)};
  }
  return LineGeometry{std::move(*points)};
}

double shoelace(const std::vector<GeoPoint>& ring) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    sum += ring[i].lon * ring[i + 1].lat - ring[i + 1].lon * ring[i].lat;
  }
  return std::abs(sum) / 2.0;
}

/// Joins outer member ways end to end into closed rings and returns the
/// largest one.
std::optional<Geometry> multipolygon_geometry(const RawRelation& rel, const WayTable& ways, const NodeTable& nodes) {
  std::vector<std::vector<std::int64_t>> pieces;
  for (const auto& m : rel.members) {
    if (m.type != ElementKind::way || (m.role != "outer" && !m.role.empty())) continue;
    auto it = ways.find(m.ref);
    if (it == ways.end() || it->second->refs.size() < 2) return std::nullopt;
    pieces.push_back(it->second->refs);
  }
  if (pieces.empty()) return std::nullopt;

  std::vector<std::vector<GeoPoint>> rings;
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t start = 0; start < pieces.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::vector<std::int64_t> chain = pieces[start];
    while (chain.front() != chain.back()) {
      bool extended = false;
      for (std::size_t i = 0; i < pieces.size() && !extended; ++i) {
        if (used[i]) continue;
        const auto& p = pieces[i];
        if (p.front() == chain.back()) {
          chain.insert(chain.end(), p.begin() + 1, p.end());
        } else if (p.back() == chain.back()) {
          chain.insert(chain.end(), p.rbegin() + 1, p.rend());
        } else {
          continue;
        }
        used[i] = true;
        extended = true;
      }
      if (!extended) return std::nullopt;
    }
    if (chain.size() < 4) return std::nullopt;
    auto points = resolve(chain, nodes);
    if (!points) return std::nullopt;
    rings.push_back(std::move(*points));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < rings.size(); ++i) {
    if (shoelace(rings[i]) > shoelace(rings[best])) best = i;
  }
  return PolygonGeometry{std::move(rings[best])};
}

bool all_valid(const Geometry& g) {
  for (const auto& p : geometry_points(g)) {
    if (!p.valid()) return false;
  }
  return true;
}

}  // namespace

std::vector<Feature> assemble_features(const std::vector<RawElement>& elements, IngestStats& stats) {
  NodeTable nodes;
  WayTable ways;
  for (const auto& e : elements) {
    if (const auto* n = std::get_if<RawNode>(&e)) {
      if (n->location.valid()) nodes.emplace(n->id, n->location);
    } else if (const auto* w = std::get_if<RawWay>(&e)) {
      ways.emplace(w->id, w);
    }
  }

  std::vector<Feature> out;
  for (const auto& e : elements) {
    ++stats.elements_read;
    std::optional<Geometry> geometry;
    FeatureUid uid;
    const TagMap* tags = nullptr;
    if (const auto* n = std::get_if<RawNode>(&e)) {
      uid = {ElementKind::node, n->id};
      tags = &n->tags;
      if (n->location.valid()) geometry = PointGeometry{n->location};
    } else if (const auto* w = std::get_if<RawWay>(&e)) {
      uid = {ElementKind::way, w->id};
      tags = &w->tags;
      geometry = way_geometry(*w, nodes);
    } else {
      const auto& r = std::get<RawRelation>(e);
      uid = {ElementKind::relation, r.id};
      tags = &r.tags;
      auto type = r.tags.find("type");
      if (type != r.tags.end() && type->second == "multipolygon") {
        geometry = multipolygon_geometry(r, ways, nodes);
      }
    }
    if (!geometry || !all_valid(*geometry)) {
      ++stats.features_dropped;
      ++stats.geometry_dropped;
      continue;
    }
    Feature f{uid, *tags, std::move(*geometry), {}};
    f.centroid = vertex_centroid(f.geometry);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace spot
