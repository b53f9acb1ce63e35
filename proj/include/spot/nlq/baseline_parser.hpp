#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spot/error.hpp"
#include "spot/imr/imr.hpp"
#include "spot/vocab/vocabulary.hpp"

namespace spot {

inline constexpr double kDefaultNearDistanceM = 100.0;

struct ParserConfig {
  const Vocabulary* vocabulary = nullptr;
  std::vector<std::string> gazetteer;  // resolvable area names
  double default_near_distance_m = kDefaultNearDistanceM;
};

class NoObjectsFound : public Error {
 public:
  explicit NoObjectsFound(std::string unconsumed)
      : Error("no map objects recognised in '" + unconsumed + "'"), unconsumed_(std::move(unconsumed)) {}
  /// Normalised text that no rule consumed.
  const std::string& unconsumed() const noexcept { return unconsumed_; }
  std::string_view code() const noexcept override { return "NoObjectsFound"; }

 private:
  std::string unconsumed_;
};

/// Rule-based sentence -> IMR translation over the structured phrasing the
/// template generator produces:
///   1. tokenize;
///   2. a trailing "in <name>" naming a gazetteer entry sets a named area,
///      otherwise the area is the map view (bbox);
///   3. descriptors are matched left to right, longest first, each becoming a
///      node with its bundle's filters;
///   4. a distance phrase ("within 200 m of", "no more than 1 km from",
///      "less than 50 m from", "300 m away from") or a proximity word ("near",
///      "next to", "beside", "close to") between two consecutive mentions adds
///      an edge between them.
/// Throws NoObjectsFound when nothing is recognised.
ImrQuery parse_baseline(std::string_view sentence, const ParserConfig& config);

}  // namespace spot
