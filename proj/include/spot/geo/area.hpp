#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spot/error.hpp"
#include "spot/geo/geo.hpp"
#include "spot/ingest/feature.hpp"
#include "spot/text.hpp"

namespace spot {

struct AreaGeometry {
  std::string name;
  std::vector<GeoPoint> polygon;  // closed ring
  BBox bbox;

  bool contains(GeoPoint p) const noexcept {
    return bbox.contains(p) && point_in_polygon(p, polygon);
  }
};

class AreaNotFound : public Error {
 public:
  explicit AreaNotFound(const std::string& name) : Error("unknown area '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }
  std::string_view code() const noexcept override { return "AreaNotFound"; }

 private:
  std::string name_;
};

class AreaFileError : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "AreaFileError"; }
};

/// JSON lines `{"name":"Bonn","polygon":[[lon,lat],...]}`.
std::vector<AreaGeometry> read_area_file(std::istream& in);
std::vector<AreaGeometry> read_area_file(const std::string& path);

/// Named-area lookup. Explicit area-file entries win over areas derived from
/// snapshot polygons tagged `boundary=administrative` or carrying `place`.
/// Among several candidates with the same name the largest bbox wins.
class AreaResolver {
 public:
  AreaResolver() = default;
  AreaResolver(std::span<const Feature> snapshot, std::vector<AreaGeometry> area_file = {});

  /// Case-insensitive. Throws AreaNotFound.
  const AreaGeometry& resolve(std::string_view name) const;

  /// Distinct display names, sorted case-insensitively.
  std::vector<std::string> names() const;
  /// Up to `limit` names with the given case-insensitive prefix.
  std::vector<std::string> suggest(std::string_view prefix, std::size_t limit = 20) const;

 private:
  static const AreaGeometry* pick(const std::vector<AreaGeometry>& areas, std::string_view name);

  std::vector<AreaGeometry> explicit_;
  std::vector<AreaGeometry> derived_;
};

}  // namespace spot
