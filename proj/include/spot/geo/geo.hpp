#pragma once

#include <span>

namespace spot {

/// Mean Earth radius (IUGG) used for all great-circle distances.
inline constexpr double kEarthRadiusM = 6371008.8;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const noexcept;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Axis-aligned lon/lat rectangle with inclusive bounds. Boxes crossing the
/// antimeridian are not representable.
struct BBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;

  bool valid() const noexcept;
  bool contains(GeoPoint p) const noexcept;
  bool intersects(const BBox& other) const noexcept;
  double area_deg2() const noexcept;

  static BBox of(std::span<const GeoPoint> points) noexcept;
  void extend(GeoPoint p) noexcept;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Great-circle distance in meters on a sphere of radius kEarthRadiusM.
double haversine_m(GeoPoint a, GeoPoint b) noexcept;

/// Even-odd ray casting in the lon/lat plane. Points on the boundary count as
/// inside. `ring` is expected to be closed (first == last).
bool point_in_polygon(GeoPoint p, std::span<const GeoPoint> ring) noexcept;

}  // namespace spot
