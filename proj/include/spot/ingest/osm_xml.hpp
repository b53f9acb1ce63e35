#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "spot/error.hpp"
#include "spot/ingest/feature.hpp"

namespace spot {

struct RawNode {
  std::int64_t id = 0;
  GeoPoint location;
  TagMap tags;
};

struct RawWay {
  std::int64_t id = 0;
  std::vector<std::int64_t> refs;
  TagMap tags;
};

struct RawMember {
  ElementKind type = ElementKind::node;
  std::int64_t ref = 0;
  std::string role;
};

struct RawRelation {
  std::int64_t id = 0;
  std::vector<RawMember> members;
  TagMap tags;
};

using RawElement = std::variant<RawNode, RawWay, RawRelation>;

class OsmXmlError : public Error {
 public:
  OsmXmlError(const std::string& what, std::int64_t byte_offset);
  std::int64_t byte_offset() const noexcept { return byte_offset_; }
  std::string_view code() const noexcept override { return "OsmXmlError"; }

 private:
  std::int64_t byte_offset_;
};

/// Streams `.osm` XML from `in`, handing each complete node, way and relation
/// to `sink` in document order. Memory use is bounded by the largest element.
/// Unknown elements (bounds, changeset, ...) are skipped.
void parse_osm_xml(std::istream& in, const std::function<void(RawElement&&)>& sink);

std::vector<RawElement> parse_osm_xml(std::istream& in);

}  // namespace spot
