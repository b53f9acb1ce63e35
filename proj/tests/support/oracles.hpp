#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spot/geo/geo.hpp"

namespace spot::test {

/// Great-circle distance from the chord between unit vectors, 2R asin(c/2).
/// Shares nothing with the production haversine except the radius.
double chord_distance_m(GeoPoint a, GeoPoint b);

/// Vincenty inverse on the WGS84 ellipsoid. NaN when it fails to converge
/// (near-antipodal points).
double vincenty_m(GeoPoint a, GeoPoint b);

/// Half-plane test for a convex ring (either orientation), boundary inside.
bool convex_contains(GeoPoint p, std::span<const GeoPoint> ring);

/// Structural problems of a GeoJSON FeatureCollection; empty when valid.
std::vector<std::string> geojson_problems(const nlohmann::json& doc);

}  // namespace spot::test
