#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spot/imr/imr.hpp"
#include "spot/ingest/feature.hpp"

namespace spot {

/// Inverted index from `key=value` and from `key` to feature positions.
class TagIndex {
 public:
  static TagIndex build(std::span<const Feature> features);

  /// Sorted positions of features satisfying the predicate.
  std::vector<std::uint32_t> candidates(const TagPredicate& predicate) const;
  /// Sorted positions satisfying every filter of the node.
  std::vector<std::uint32_t> candidates(const ImrNode& node) const;

 private:
  static const std::vector<std::uint32_t>& empty();
  const std::vector<std::uint32_t>& lookup(const std::unordered_map<std::string, std::vector<std::uint32_t>>& map,
                                           const std::string& key) const;

  std::unordered_map<std::string, std::vector<std::uint32_t>> by_tag_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_key_;
};

}  // namespace spot
