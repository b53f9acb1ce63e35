#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spot/server/config.hpp"

namespace spot::test {

std::string data_path(const std::string& name) { return std::string(SPOT_DATA_DIR) + "/" + name; }
std::string golden_path(const std::string& name) { return std::string(SPOT_TEST_DIR) + "/golden/" + name; }
std::string spot_binary() { return SPOT_BINARY; }

Feature point_feature(std::int64_t id, double lat, double lon, TagMap tags) {
  Feature f;
  f.uid = {ElementKind::node, id};
  f.tags = std::move(tags);
  f.geometry = PointGeometry{{lat, lon}};
  f.centroid = {lat, lon};
  return f;
}

std::vector<Feature> toy_features() {
  std::vector<Feature> fs;
  fs.push_back(point_feature(1, 50.7370, 7.0980, {{"amenity", "restaurant"}}));
  fs.push_back(point_feature(2, 50.7372, 7.0984, {{"amenity", "fountain"}}));
  fs.push_back(point_feature(3, 50.7450, 7.1100, {{"amenity", "restaurant"}}));
  fs.push_back(point_feature(4, 50.7371, 7.0982, {{"natural", "tree"}}));
  Feature park;
  park.uid = {ElementKind::way, 5};
  park.tags = {{"leisure", "park"}};
  const double lat = 50.7380, lon = 7.0990, dlat = 0.0005, dlon = 0.0007;
  park.geometry = PolygonGeometry{{{lat - dlat, lon - dlon},
                                   {lat - dlat, lon + dlon},
                                   {lat + dlat, lon + dlon},
                                   {lat + dlat, lon - dlon},
                                   {lat - dlat, lon - dlon}}};
  park.centroid = vertex_centroid(park.geometry);
  fs.push_back(std::move(park));
  return fs;
}

BBox toy_bbox() { return {7.09, 50.73, 7.12, 50.75}; }

ImrQuery toy_restaurant_fountain(double distance_m) {
  ImrQuery q;
  q.area = ImrArea::bbox();
  q.nodes = {{0, "restaurant", {TagPredicate::eq("amenity", "restaurant")}},
             {1, "fountain", {TagPredicate::eq("amenity", "fountain")}}};
  q.edges = {{0, 1, distance_m}};
  return q;
}

std::vector<Feature> synthetic_features(std::uint64_t seed, std::size_t n, const BBox& region) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  static const std::vector<std::pair<std::string, std::string>> pool = {
      {"amenity", "restaurant"}, {"amenity", "cafe"}, {"amenity", "fountain"},
      {"amenity", "bench"},      {"natural", "tree"}, {"shop", "bakery"}};
  std::vector<Feature> fs;
  fs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lat = region.min_lat + u(rng) * (region.max_lat - region.min_lat);
    const double lon = region.min_lon + u(rng) * (region.max_lon - region.min_lon);
    const auto& [k, v] = pool[static_cast<std::size_t>(u(rng) * static_cast<double>(pool.size())) % pool.size()];
    TagMap tags{{k, v}};
    if (u(rng) < 0.3) tags["wheelchair"] = "yes";
    if (u(rng) < 0.2) tags["outdoor_seating"] = "yes";
    fs.push_back(point_feature(static_cast<std::int64_t>(i + 1), lat, lon, std::move(tags)));
  }
  return fs;
}

const Vocabulary& shipped_vocabulary() {
  static const Vocabulary v = Vocabulary::load(data_path("bundles.jsonl"));
  return v;
}

const std::vector<std::string>& shipped_gazetteer() {
  static const std::vector<std::string> g = read_name_list(data_path("gazetteer.txt"));
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace spot::test
