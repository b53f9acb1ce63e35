#include "spot/geo/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spot {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool on_segment(GeoPoint p, GeoPoint a, GeoPoint b) noexcept {
  const double cross =
      (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  const double scale = std::max({std::abs(b.lon - a.lon), std::abs(b.lat - a.lat), 1.0});
  if (std::abs(cross) > 1e-12 * scale) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool GeoPoint::valid() const noexcept {
  return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
         lon >= -180.0 && lon <= 180.0;
}

bool BBox::valid() const noexcept {
  return GeoPoint{min_lat, min_lon}.valid() && GeoPoint{max_lat, max_lon}.valid() &&
         min_lon <= max_lon && min_lat <= max_lat;
}

bool BBox::contains(GeoPoint p) const noexcept {
  return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat && p.lat <= max_lat;
}

bool BBox::intersects(const BBox& o) const noexcept {
  return !(o.min_lon > max_lon || o.max_lon < min_lon || o.min_lat > max_lat ||
           o.max_lat < min_lat);
}

double BBox::area_deg2() const noexcept { return (max_lon - min_lon) * (max_lat - min_lat); }

BBox BBox::of(std::span<const GeoPoint> points) noexcept {
  if (points.empty()) return {};
  BBox box{points.front().lon, points.front().lat, points.front().lon, points.front().lat};
  for (const auto& p : points.subspan(1)) box.extend(p);
  return box;
}

void BBox::extend(GeoPoint p) noexcept {
  min_lon = std::min(min_lon, p.lon);
  min_lat = std::min(min_lat, p.lat);
  max_lon = std::max(max_lon, p.lon);
  max_lat = std::max(max_lat, p.lat);
}

double haversine_m(GeoPoint a, GeoPoint b) noexcept {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double s_lat = std::sin((phi2 - phi1) / 2.0);
  const double s_lon = std::sin((b.lon - a.lon) * kDegToRad / 2.0);
  // sin^2 makes the expression exactly symmetric in (a, b).
  const double h = s_lat * s_lat + std::cos(phi1) * std::cos(phi2) * s_lon * s_lon;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

bool point_in_polygon(GeoPoint p, std::span<const GeoPoint> ring) noexcept {
  if (ring.size() < 4) return false;
  if (!BBox::of(ring).contains(p)) return false;

  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const GeoPoint& a = ring[i];
    const GeoPoint& b = ring[j];
    if (on_segment(p, a, b)) return true;
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = (b.lon - a.lon) * (p.lat - a.lat) / (b.lat - a.lat) + a.lon;
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace spot
