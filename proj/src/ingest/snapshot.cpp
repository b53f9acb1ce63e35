#include "spot/ingest/snapshot.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace spot {

using nlohmann::json;
using nlohmann::ordered_json;

SnapshotError::SnapshotError(Kind kind, std::size_t line, const std::string& what)
    : Error(line ? "snapshot line " + std::to_string(line) + ": " + what : "snapshot: " + what),
      kind_(kind),
      line_(line) {}

namespace {

ordered_json lonlat(GeoPoint p) { return ordered_json::array({p.lon, p.lat}); }

ordered_json lonlat_list(const std::vector<GeoPoint>& points) {
  auto arr = ordered_json::array();
  for (const auto& p : points) arr.push_back(lonlat(p));
  return arr;
}

GeoPoint read_lonlat(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("expected [lon,lat]");
  }
  return {j[1].get<double>(), j[0].get<double>()};
}

std::vector<GeoPoint> read_lonlat_list(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected coordinate list");
  std::vector<GeoPoint> out;
  out.reserve(j.size());
  for (const auto& p : j) out.push_back(read_lonlat(p));
  return out;
}

Geometry read_geometry(const json& j) {
  const auto& type = j.at("type").get_ref<const std::string&>();
  const auto& coords = j.at("coordinates");
  if (type == "Point") return PointGeometry{read_lonlat(coords)};
  if (type == "LineString") return LineGeometry{read_lonlat_list(coords)};
  if (type == "Polygon") {
    if (!coords.is_array() || coords.size() != 1) throw std::invalid_argument("polygon must have one ring");
    return PolygonGeometry{read_lonlat_list(coords[0])};
  }
  throw std::invalid_argument("unknown geometry type " + type);
}

Feature read_feature(const json& j) {
  Feature f;
  auto uid = FeatureUid::parse(j.at("uid").get_ref<const std::string&>());
  if (!uid) throw std::invalid_argument("bad uid");
  auto kind = parse_element_kind(j.at("kind").get_ref<const std::string&>());
  if (!kind || *kind != uid->kind) throw std::invalid_argument("kind does not match uid");
  f.uid = *uid;
  for (const auto& [k, v] : j.at("tags").items()) f.tags.emplace(k, v.get<std::string>());
  f.centroid = read_lonlat(j.at("centroid"));
  f.geometry = read_geometry(j.at("geometry"));
  return f;
}

}  // namespace

ordered_json geometry_to_geojson(const Geometry& geometry) {
  ordered_json g;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PointGeometry>) {
          g["type"] = "Point";
          g["coordinates"] = lonlat(v.at);
        } else if constexpr (std::is_same_v<T, LineGeometry>) {
          g["type"] = "LineString";
          g["coordinates"] = lonlat_list(v.points);
        } else {
          g["type"] = "Polygon";
          g["coordinates"] = ordered_json::array({lonlat_list(v.ring)});
        }
      },
      geometry);
  return g;
}

void write_snapshot(std::ostream& out, std::span<const Feature> features) {
  BBox box;
  bool first = true;
  for (const auto& f : features) {
    const BBox b = geometry_bbox(f.geometry);
    if (first) {
      box = b;
      first = false;
    } else {
      box.extend({b.min_lat, b.min_lon});
      box.extend({b.max_lat, b.max_lon});
    }
  }
  ordered_json header;
  header["snapshot"] = kSnapshotVersion;
  header["count"] = features.size();
  header["bbox"] = {box.min_lon, box.min_lat, box.max_lon, box.max_lat};
  out << header.dump() << '\n';

  for (const auto& f : features) {
    ordered_json rec;
    rec["uid"] = f.uid.str();
    rec["kind"] = to_string(f.kind());
    rec["tags"] = ordered_json::object();
    for (const auto& [k, v] : f.tags) rec["tags"][k] = v;
    rec["centroid"] = lonlat(f.centroid);
    rec["geometry"] = geometry_to_geojson(f.geometry);
    out << rec.dump() << '\n';
  }
}

void write_snapshot_file(const std::string& path, std::span<const Feature> features) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SnapshotError(SnapshotError::Kind::io, 0, "cannot open " + path + " for writing");
  write_snapshot(out, features);
  if (!out) throw SnapshotError(SnapshotError::Kind::io, 0, "write failed for " + path);
}

std::vector<Feature> read_snapshot(std::istream& in) {
  using Kind = SnapshotError::Kind;
  std::string line;
  if (!std::getline(in, line)) throw SnapshotError(Kind::truncated, 0, "missing header");
  if (in.eof()) throw SnapshotError(Kind::truncated, 1, "header not newline-terminated");

  std::size_t expected = 0;
  try {
    const json header = json::parse(line);
    if (header.at("snapshot").get<int>() != kSnapshotVersion) {
      throw SnapshotError(Kind::version_mismatch, 1,
                          "unsupported snapshot version " + header.at("snapshot").dump());
    }
    expected = header.at("count").get<std::size_t>();
  } catch (const SnapshotError&) {
    throw;
  } catch (const std::exception& e) {
    throw SnapshotError(Kind::malformed, 1, std::string("bad header: ") + e.what());
  }

  std::vector<Feature> features;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (in.eof()) throw SnapshotError(Kind::truncated, line_no, "record not newline-terminated");
    Feature f;
    try {
      f = read_feature(json::parse(line));
    } catch (const std::exception& e) {
      throw SnapshotError(Kind::malformed, line_no, e.what());
    }
    if (auto v = feature_violations(f); !v.empty()) throw SnapshotError(Kind::malformed, line_no, v.front());
    features.push_back(std::move(f));
  }
  if (features.size() != expected) {
    throw SnapshotError(Kind::integrity, 0,
                        "header count " + std::to_string(expected) + " but " +
                            std::to_string(features.size()) + " records");
  }
  return features;
}

std::vector<Feature> read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(SnapshotError::Kind::io, 0, "cannot open " + path);
  return read_snapshot(in);
}

}  // namespace spot
