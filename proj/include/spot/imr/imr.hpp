#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "spot/ingest/feature.hpp"

namespace spot {

enum class PredicateOp : std::uint8_t { eq, one_of, exists };

std::string_view to_string(PredicateOp op) noexcept;

/// One tag test on a feature. `values` holds one entry for eq, one or more
/// for one_of and none for exists.
struct TagPredicate {
  std::string key;
  PredicateOp op = PredicateOp::eq;
  std::vector<std::string> values;

  static TagPredicate eq(std::string key, std::string value);
  static TagPredicate one_of(std::string key, std::vector<std::string> values);
  static TagPredicate exists(std::string key);

  bool matches(const TagMap& tags) const;

  friend auto operator<=>(const TagPredicate&, const TagPredicate&) = default;
  friend bool operator==(const TagPredicate&, const TagPredicate&) = default;
};

struct ImrNode {
  int id = 0;
  std::string name;                  // display only
  std::vector<TagPredicate> filters;  // conjunctive

  bool matches(const TagMap& tags) const;

  friend bool operator==(const ImrNode&, const ImrNode&) = default;
};

struct ImrEdge {
  int src = 0;
  int dst = 0;
  double max_distance_m = 0.0;

  friend bool operator==(const ImrEdge&, const ImrEdge&) = default;
};

enum class AreaKind : std::uint8_t { named, bbox };

struct ImrArea {
  AreaKind kind = AreaKind::bbox;
  std::string value;  // area name when kind == named

  static ImrArea named(std::string name) { return {AreaKind::named, std::move(name)}; }
  static ImrArea bbox() { return {AreaKind::bbox, {}}; }

  friend bool operator==(const ImrArea&, const ImrArea&) = default;
};

inline constexpr int kImrVersion = 1;

struct ImrQuery {
  int version = kImrVersion;
  ImrArea area;
  std::vector<ImrNode> nodes;
  std::vector<ImrEdge> edges;

  const ImrNode* node(int id) const;
  /// Position of the node with `id` in `nodes`, or -1.
  int index_of(int id) const;

  friend bool operator==(const ImrQuery&, const ImrQuery&) = default;
};

}  // namespace spot
