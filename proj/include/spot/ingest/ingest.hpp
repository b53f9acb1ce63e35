#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spot/error.hpp"
#include "spot/ingest/feature.hpp"
#include "spot/ingest/osm_xml.hpp"

namespace spot {

struct IngestStats {
  std::uint64_t elements_read = 0;
  std::uint64_t features_kept = 0;
  std::uint64_t features_dropped = 0;
  /// Subset of features_dropped lost to unresolvable geometry.
  std::uint64_t geometry_dropped = 0;
  std::uint64_t tag_bytes_before = 0;
  std::uint64_t tag_bytes_after = 0;

  std::uint64_t tag_bytes_removed() const noexcept { return tag_bytes_before - tag_bytes_after; }
  /// 1 - after/before; 0 when nothing was measured.
  double reduction_ratio() const noexcept;
};

class WhitelistError : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "WhitelistError"; }
};

/// Set of `key` (any value) and `key=value` patterns.
class TagWhitelist {
 public:
  static TagWhitelist from_patterns(const std::vector<std::string>& patterns);
  /// One pattern per line; blank lines and `#` comments are ignored.
  static TagWhitelist parse(std::istream& in);
  static TagWhitelist load(const std::string& path);

  bool matches(std::string_view key, std::string_view value) const;
  std::size_t size() const noexcept { return keys_.size() + pairs_.size(); }

 private:
  std::set<std::string, std::less<>> keys_;
  std::set<std::pair<std::string, std::string>, std::less<>> pairs_;
};

/// UTF-8 byte length of the tags written as concatenated `key=value` pairs.
std::uint64_t tag_bytes(const TagMap& tags) noexcept;

/// Turns raw elements into features with their unfiltered tags. Nodes become
/// points; closed ways (or `area=yes`) become polygons, other ways lines;
/// `type=multipolygon` relations become a polygon from their outer ring.
/// Unresolvable geometry is dropped and counted in `stats`.
std::vector<Feature> assemble_features(const std::vector<RawElement>& elements, IngestStats& stats);

/// Keeps only whitelisted tags. Returns nullopt when no tag survives.
std::optional<Feature> filter_tags(Feature feature, const TagWhitelist& whitelist, IngestStats& stats);

struct IngestResult {
  std::vector<Feature> features;
  IngestStats stats;
};

/// parse -> assemble -> filter, preserving document order.
IngestResult ingest_osm(std::istream& in, const TagWhitelist& whitelist);

}  // namespace spot
