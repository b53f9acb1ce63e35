#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spot/geo/geo.hpp"
#include "spot/imr/imr.hpp"
#include "spot/ingest/feature.hpp"
#include "spot/vocab/vocabulary.hpp"

namespace spot::test {

std::string data_path(const std::string& name);
std::string golden_path(const std::string& name);
std::string spot_binary();

/// The five-feature fixture used across the engine and service tests:
///   n1 amenity=restaurant (50.7370, 7.0980)
///   n2 amenity=fountain   (50.7372, 7.0984)
///   n3 amenity=restaurant (50.7450, 7.1100)
///   n4 natural=tree       (50.7371, 7.0982)
///   w5 leisure=park, square polygon centred on (50.7380, 7.0990)
std::vector<Feature> toy_features();
/// Covers every TOY feature with some margin.
BBox toy_bbox();
/// restaurant -- fountain with one edge of `distance_m`, map-view area.
ImrQuery toy_restaurant_fountain(double distance_m = 100.0);

Feature point_feature(std::int64_t id, double lat, double lon, TagMap tags);

/// Seeded random point features inside `region`, tags drawn from a small pool
/// (amenity=restaurant|cafe|fountain|bench, natural=tree, shop=bakery) with
/// occasional companion tags, so joins find both hits and misses.
std::vector<Feature> synthetic_features(std::uint64_t seed, std::size_t n, const BBox& region);

/// Shipped vocabulary and gazetteer from data/.
const Vocabulary& shipped_vocabulary();
const std::vector<std::string>& shipped_gazetteer();

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace spot::test
