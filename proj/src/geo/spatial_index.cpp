#include "spot/geo/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spot {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// Candidate boxes are widened by this much so rounding never loses a match.
constexpr double kPadDeg = 1e-7;

double choose_cell_size(std::span<const GeoPoint> points) {
  if (points.empty()) return 1.0;
  const BBox box = BBox::of(points);
  const double w = box.max_lon - box.min_lon;
  const double h = box.max_lat - box.min_lat;
  const double target_cells = std::max(1.0, static_cast<double>(points.size()) / 4.0);
  double cell = w * h > 0.0 ? std::sqrt(w * h / target_cells) : std::max(w, h) / target_cells;
  return std::clamp(cell, 1e-5, 1.0);
}

}  // namespace

SpatialIndex SpatialIndex::build(std::span<const Feature> features) {
  std::vector<GeoPoint> centroids;
  std::vector<FeatureUid> uids;
  centroids.reserve(features.size());
  uids.reserve(features.size());
  for (const auto& f : features) {
    centroids.push_back(f.centroid);
    uids.push_back(f.uid);
  }
  return build(centroids, std::move(uids));
}

SpatialIndex SpatialIndex::build(std::span<const GeoPoint> centroids, std::vector<FeatureUid> uids) {
  SpatialIndex index;
  index.points_.assign(centroids.begin(), centroids.end());
  index.uids_ = std::move(uids);
  index.cell_deg_ = choose_cell_size(centroids);
  for (std::uint32_t i = 0; i < index.points_.size(); ++i) {
    const auto& p = index.points_[i];
    index.cells_[index.key(index.col(p.lon), index.row(p.lat))].push_back(i);
  }
  return index;
}

SpatialIndex::CellKey SpatialIndex::key(std::int64_t ix, std::int64_t iy) const noexcept {
  return (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint32_t>(iy);
}

std::int64_t SpatialIndex::col(double lon) const noexcept {
  return static_cast<std::int64_t>(std::floor((lon + 180.0) / cell_deg_));
}

std::int64_t SpatialIndex::row(double lat) const noexcept {
  return static_cast<std::int64_t>(std::floor((lat + 90.0) / cell_deg_));
}

template <typename Accept>
std::vector<std::uint32_t> SpatialIndex::scan(const BBox& cover, Accept&& accept) const {
  std::vector<std::uint32_t> out;
  const auto x0 = col(cover.min_lon), x1 = col(cover.max_lon);
  const auto y0 = row(cover.min_lat), y1 = row(cover.max_lat);
  const double span_cells = static_cast<double>(x1 - x0 + 1) * static_cast<double>(y1 - y0 + 1);

  if (span_cells > static_cast<double>(cells_.size())) {
    for (std::uint32_t i = 0; i < points_.size(); ++i) {
      if (cover.contains(points_[i]) && accept(points_[i])) out.push_back(i);
    }
    return out;
  }
  for (auto x = x0; x <= x1; ++x) {
    for (auto y = y0; y <= y1; ++y) {
      auto it = cells_.find(key(x, y));
      if (it == cells_.end()) continue;
      for (auto i : it->second) {
        if (accept(points_[i])) out.push_back(i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> SpatialIndex::radius(GeoPoint center, double radius_m) const {
  if (!(radius_m >= 0.0)) return {};
  const double angular = radius_m / kEarthRadiusM;
  BBox cover{-180.0, -90.0, 180.0, 90.0};
  if (angular < std::numbers::pi) {
    const double dlat = angular * kRadToDeg + kPadDeg;
    cover.min_lat = std::max(-90.0, center.lat - dlat);
    cover.max_lat = std::min(90.0, center.lat + dlat);
    const bool reaches_pole = center.lat + dlat >= 90.0 || center.lat - dlat <= -90.0;
    if (!reaches_pole) {
      const double s = std::sin(angular) / std::cos(center.lat * std::numbers::pi / 180.0);
      if (s < 1.0) {
        const double dlon = std::asin(s) * kRadToDeg + kPadDeg;
        if (center.lon - dlon >= -180.0 && center.lon + dlon <= 180.0) {
          cover.min_lon = center.lon - dlon;
          cover.max_lon = center.lon + dlon;
        }
      }
    }
  }
  return scan(cover, [&](GeoPoint p) { return haversine_m(p, center) <= radius_m; });
}

std::vector<std::uint32_t> SpatialIndex::within(const BBox& box) const {
  return scan(box, [&](GeoPoint p) { return box.contains(p); });
}

std::vector<FeatureUid> SpatialIndex::to_uids(const std::vector<std::uint32_t>& positions) const {
  std::vector<FeatureUid> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(uids_.at(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FeatureUid> SpatialIndex::radius_uids(GeoPoint center, double radius_m) const {
  return to_uids(radius(center, radius_m));
}

std::vector<FeatureUid> SpatialIndex::within_uids(const BBox& box) const {
  return to_uids(within(box));
}

}  // namespace spot
