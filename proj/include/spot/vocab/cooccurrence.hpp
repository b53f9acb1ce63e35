#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spot/ingest/feature.hpp"
#include "spot/vocab/vocabulary.hpp"

namespace spot {

struct CooccurrenceEntry {
  std::string bundle_id;
  Tag companion;
  std::uint64_t count = 0;
  double freq = 0.0;  // count / number of features matching the bundle

  friend bool operator==(const CooccurrenceEntry&, const CooccurrenceEntry&) = default;
};

inline constexpr std::uint64_t kDefaultMinCount = 10;
inline constexpr std::size_t kDefaultTopK = 20;

/// Companion tags seen on the same feature as a bundle. Per bundle (in
/// vocabulary order): count every tag other than the bundle's own on matching
/// features, keep count >= min_count, sort by count desc then `key=value`, and
/// truncate to top_k.
std::vector<CooccurrenceEntry> mine_cooccurrence(std::span<const Feature> features, const Vocabulary& vocabulary,
                                                 std::uint64_t min_count = kDefaultMinCount,
                                                 std::size_t top_k = kDefaultTopK);

/// JSON lines `{"bundle":..,"companion":"k=v","count":n,"freq":f}`.
void write_cooccurrence(std::ostream& out, std::span<const CooccurrenceEntry> entries);
std::vector<CooccurrenceEntry> read_cooccurrence(std::istream& in);
std::vector<CooccurrenceEntry> read_cooccurrence_file(const std::string& path);

}  // namespace spot
