#include "spot/ingest/feature.hpp"

#include <algorithm>
#include <charconv>

namespace spot {

std::string_view to_string(ElementKind kind) noexcept {
  switch (kind) {
    case ElementKind::node: return "node";
    case ElementKind::way: return "way";
    case ElementKind::relation: return "relation";
  }
  return "node";
}

std::optional<ElementKind> parse_element_kind(std::string_view text) noexcept {
  if (text == "node") return ElementKind::node;
  if (text == "way") return ElementKind::way;
  if (text == "relation") return ElementKind::relation;
  return std::nullopt;
}

std::string FeatureUid::str() const {
  const char prefix = kind == ElementKind::node ? 'n' : kind == ElementKind::way ? 'w' : 'r';
  return prefix + std::to_string(id);
}

std::optional<FeatureUid> FeatureUid::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  FeatureUid uid;
  switch (text.front()) {
    case 'n': uid.kind = ElementKind::node; break;
    case 'w': uid.kind = ElementKind::way; break;
    case 'r': uid.kind = ElementKind::relation; break;
    default: return std::nullopt;
  }
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, uid.id);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return uid;
}

std::vector<GeoPoint> geometry_points(const Geometry& geometry) {
  return std::visit(
      [](const auto& g) -> std::vector<GeoPoint> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PointGeometry>) {
          return {g.at};
        } else if constexpr (std::is_same_v<T, LineGeometry>) {
          return g.points;
        } else {
          return g.ring;
        }
      },
      geometry);
}

BBox geometry_bbox(const Geometry& geometry) {
  const auto points = geometry_points(geometry);
  return BBox::of(points);
}

GeoPoint vertex_centroid(const Geometry& geometry) {
  auto points = geometry_points(geometry);
  if (std::holds_alternative<PolygonGeometry>(geometry) && points.size() > 1) points.pop_back();
  if (points.empty()) return {};
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& p : points) {
    lat += p.lat;
    lon += p.lon;
  }
  const auto n = static_cast<double>(points.size());
  // Clamp so rounding in the sum never pushes the mean outside the bbox.
  const BBox box = BBox::of(points);
  return {std::clamp(lat / n, box.min_lat, box.max_lat),
          std::clamp(lon / n, box.min_lon, box.max_lon)};
}

const std::string* Feature::tag(std::string_view key) const {
  auto it = tags.find(key);
  return it == tags.end() ? nullptr : &it->second;
}

std::vector<std::string> feature_violations(const Feature& feature) {
  std::vector<std::string> out;
  const auto points = geometry_points(feature.geometry);
  for (const auto& p : points) {
    if (!p.valid()) {
      out.push_back("coordinate out of range");
      break;
    }
  }
  if (feature.tags.empty()) out.push_back("no tags");
  for (const auto& [k, v] : feature.tags) {
    if (k.empty()) out.push_back("empty tag key");
  }
  if (const auto* poly = std::get_if<PolygonGeometry>(&feature.geometry)) {
    if (poly->ring.size() < 4) out.push_back("polygon ring has fewer than 4 points");
    else if (poly->ring.front() != poly->ring.back()) out.push_back("polygon ring not closed");
  }
  if (const auto* line = std::get_if<LineGeometry>(&feature.geometry)) {
    if (line->points.size() < 2) out.push_back("line has fewer than 2 points");
  }
  if (!feature.centroid.valid()) {
    out.push_back("centroid out of range");
  } else if (!points.empty() && !BBox::of(points).contains(feature.centroid)) {
    out.push_back("centroid outside geometry bbox");
  }
  return out;
}

}  // namespace spot
