#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spot/geo/geo.hpp"

namespace spot {

enum class ElementKind : std::uint8_t { node, way, relation };

std::string_view to_string(ElementKind kind) noexcept;
std::optional<ElementKind> parse_element_kind(std::string_view text) noexcept;

/// Identity of an OSM element: kind plus its 64-bit id. Printed as `n1`, `w2`,
/// `r3`. Ordering is (kind, id).
struct FeatureUid {
  ElementKind kind = ElementKind::node;
  std::int64_t id = 0;

  std::string str() const;
  static std::optional<FeatureUid> parse(std::string_view text);

  friend auto operator<=>(const FeatureUid&, const FeatureUid&) = default;
};

using TagMap = std::map<std::string, std::string, std::less<>>;

struct PointGeometry {
  GeoPoint at;
  friend bool operator==(const PointGeometry&, const PointGeometry&) = default;
};

struct LineGeometry {
  std::vector<GeoPoint> points;
  friend bool operator==(const LineGeometry&, const LineGeometry&) = default;
};

/// Outer ring only; closed (front == back) with at least 4 points.
struct PolygonGeometry {
  std::vector<GeoPoint> ring;
  friend bool operator==(const PolygonGeometry&, const PolygonGeometry&) = default;
};

using Geometry = std::variant<PointGeometry, LineGeometry, PolygonGeometry>;

std::vector<GeoPoint> geometry_points(const Geometry& geometry);
BBox geometry_bbox(const Geometry& geometry);

/// Vertex mean. Polygons skip the closing vertex; points return themselves.
GeoPoint vertex_centroid(const Geometry& geometry);

struct Feature {
  FeatureUid uid;
  TagMap tags;
  Geometry geometry;
  GeoPoint centroid;

  ElementKind kind() const noexcept { return uid.kind; }
  const std::string* tag(std::string_view key) const;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// Empty when `feature` satisfies every Feature invariant.
std::vector<std::string> feature_violations(const Feature& feature);

}  // namespace spot
