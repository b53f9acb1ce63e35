#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "spot/engine/search.hpp"
#include "spot/text.hpp"

namespace spot {

/// PostGIS SQL equivalent of the query over `features(id BIGINT, tags JSONB,
/// geom GEOMETRY)`, one alias `n<i>` per node in canonical order. Named areas
/// read from an `areas(name, geom)` table; a bbox area leaves `$1..$4`
/// placeholders. Emitted only, never executed here.
std::string emit_sql(const ImrQuery& query);

/// GeoJSON FeatureCollection: every member feature with properties
/// {spot_index, node_id, node_name, tags}, plus a Point per spot at the mean
/// of its members' centroids with {spot_index, span_m, role:"spot_center"}.
nlohmann::ordered_json spots_to_geojson(std::span<const SpotMatch> matches, const FeatureStore& store,
                                        const ImrQuery& query);

}  // namespace spot
