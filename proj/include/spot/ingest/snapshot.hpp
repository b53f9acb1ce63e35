#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spot/error.hpp"
#include "spot/ingest/feature.hpp"

namespace spot {

inline constexpr int kSnapshotVersion = 1;

class SnapshotError : public Error {
 public:
  enum class Kind { io, version_mismatch, truncated, malformed, integrity };

  SnapshotError(Kind kind, std::size_t line, const std::string& what);
  Kind kind() const noexcept { return kind_; }
  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }
  std::string_view code() const noexcept override { return "SnapshotError"; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// GeoJSON geometry object, coordinates as [lon, lat].
nlohmann::ordered_json geometry_to_geojson(const Geometry& geometry);

void write_snapshot(std::ostream& out, std::span<const Feature> features);
void write_snapshot_file(const std::string& path, std::span<const Feature> features);

std::vector<Feature> read_snapshot(std::istream& in);
std::vector<Feature> read_snapshot_file(const std::string& path);

}  // namespace spot
