#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "spot/datagen/rng.hpp"
#include "spot/imr/imr.hpp"
#include "spot/vocab/cooccurrence.hpp"
#include "spot/vocab/vocabulary.hpp"

namespace spot {

struct GenConfig {
  std::uint64_t seed = 1;
  int max_objects = 3;
  double p_companion = 0.4;
  int max_companions = 2;
  double p_edge = 0.7;
  double min_distance_m = 10.0;
  double max_distance_m = 1000.0;
  double p_named_area = 0.5;

  /// Throws std::invalid_argument when a field is out of range.
  void check() const;
};

/// Log-uniform over the configured range, rounded to the nearest 10 m and
/// kept inside the range.
double sample_distance(Rng& rng, const GenConfig& config);

/// One random query. Draw order, fixed for reproducibility: object count;
/// per object its bundle, the companion coin, the companion count and picks;
/// per unordered pair (i < j) the edge coin and distance; the area coin and
/// name. The primary filters of an object are its bundle's predicates, and
/// companions are extra eq predicates on keys the node does not test yet,
/// drawn without replacement weighted by co-occurrence frequency.
ImrQuery sample_imr(Rng& rng, const Vocabulary& vocabulary, std::span<const CooccurrenceEntry> cooccurrence,
                    std::span<const std::string> gazetteer, const GenConfig& config);

}  // namespace spot
