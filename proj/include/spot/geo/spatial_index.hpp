#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "spot/geo/geo.hpp"
#include "spot/ingest/feature.hpp"

namespace spot {

/// Uniform lon/lat grid over feature centroids. Grid cells only produce
/// candidates; every result is refined with the exact predicate, so answers
/// equal a linear scan. Immutable after build and safe for concurrent reads.
class SpatialIndex {
 public:
  SpatialIndex() = default;

  static SpatialIndex build(std::span<const Feature> features);
  static SpatialIndex build(std::span<const GeoPoint> centroids, std::vector<FeatureUid> uids = {});

  /// Positions (into the build input) with haversine(centroid, center) <= radius_m,
  /// ascending.
  std::vector<std::uint32_t> radius(GeoPoint center, double radius_m) const;
  /// Positions whose centroid lies in `box` (inclusive), ascending.
  std::vector<std::uint32_t> within(const BBox& box) const;

  std::vector<FeatureUid> radius_uids(GeoPoint center, double radius_m) const;
  std::vector<FeatureUid> within_uids(const BBox& box) const;

  std::size_t size() const noexcept { return points_.size(); }
  GeoPoint point(std::uint32_t pos) const { return points_[pos]; }
  double cell_deg() const noexcept { return cell_deg_; }

 private:
  using CellKey = std::uint64_t;
  CellKey key(std::int64_t ix, std::int64_t iy) const noexcept;
  std::int64_t col(double lon) const noexcept;
  std::int64_t row(double lat) const noexcept;

  template <typename Accept>
  std::vector<std::uint32_t> scan(const BBox& cover, Accept&& accept) const;

  std::vector<FeatureUid> to_uids(const std::vector<std::uint32_t>& positions) const;

  double cell_deg_ = 1.0;
  std::vector<GeoPoint> points_;
  std::vector<FeatureUid> uids_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>> cells_;
};

}  // namespace spot
