#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spot/engine/tag_index.hpp"
#include "spot/error.hpp"
#include "spot/geo/area.hpp"
#include "spot/geo/spatial_index.hpp"
#include "spot/imr/imr.hpp"
#include "spot/ingest/feature.hpp"

namespace spot {

/// Snapshot features plus every index built over them. Immutable once built.
class FeatureStore {
 public:
  explicit FeatureStore(std::vector<Feature> features, std::vector<AreaGeometry> area_file = {});

  std::span<const Feature> features() const noexcept { return features_; }
  const SpatialIndex& spatial() const noexcept { return spatial_; }
  const TagIndex& tags() const noexcept { return tags_; }
  const AreaResolver& areas() const noexcept { return areas_; }
  const Feature* find(const FeatureUid& uid) const;

 private:
  std::vector<Feature> features_;
  std::map<FeatureUid, std::uint32_t> by_uid_;
  SpatialIndex spatial_;
  TagIndex tags_;
  AreaResolver areas_;
};

inline constexpr std::size_t kDefaultLimit = 100;
inline constexpr std::size_t kMaxLimit = 1000;

struct SearchParams {
  std::size_t limit = kDefaultLimit;
  std::optional<BBox> bbox;  // required for bbox-area queries
};

class AreaRequired : public Error {
 public:
  AreaRequired() : Error("query uses the map view as its area but no bbox was given") {}
  std::string_view code() const noexcept override { return "AreaRequired"; }
};

class GuardViolation : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "GuardViolation"; }
};

/// The region every matched feature's centroid must fall in.
struct SearchArea {
  BBox box;
  const AreaGeometry* polygon = nullptr;

  bool contains(GeoPoint p) const noexcept { return polygon ? polygon->contains(p) : box.contains(p); }
};

/// Throws AreaRequired or AreaNotFound.
SearchArea resolve_search_area(const ImrQuery& query, const SearchParams& params, const AreaResolver& areas);

struct SpotMatch {
  std::vector<std::pair<int, FeatureUid>> assignment;  // by node id, ascending
  double span_m = 0.0;                                  // max pairwise centroid distance

  friend bool operator==(const SpotMatch&, const SpotMatch&) = default;
};

enum class CandidateSource { inverted_index, radius_probe };

struct PlanStep {
  int node_id = 0;
  CandidateSource source = CandidateSource::inverted_index;
  int anchor_id = -1;     // radius_probe only
  double radius_m = 0.0;  // radius_probe only
  /// Edges to nodes placed earlier: (other node id, max distance).
  std::vector<std::pair<int, double>> checks;
};

struct SearchPlan {
  std::vector<PlanStep> steps;

  std::vector<int> node_order() const;
};

/// Most selective node first; afterwards prefer a node joined by an edge to
/// one already placed (probed around it by that edge's distance), otherwise
/// the most selective remaining node from the inverted index. Ties go to the
/// lowest node id. `candidate_counts` is aligned with `query.nodes`.
SearchPlan plan(const ImrQuery& query, std::span<const std::size_t> candidate_counts);

struct SearchStats {
  std::vector<std::size_t> candidates;  // aligned with query.nodes
  std::uint64_t examined_pairs = 0;
};

/// Depth-first join in plan order. Results are deduplicated over nodes with
/// identical filters, sorted by (span_m, uid tuple) and cut to params.limit.
std::vector<SpotMatch> execute(const SearchPlan& plan, const ImrQuery& query, const FeatureStore& store,
                               const SearchArea& area, const SearchParams& params, SearchStats* stats = nullptr);

/// Plans and executes, resolving the area first.
std::vector<SpotMatch> search(const ImrQuery& query, const FeatureStore& store, const SearchParams& params,
                              SearchStats* stats = nullptr);

inline constexpr std::size_t kBruteForceMaxNodes = 4;
inline constexpr std::size_t kBruteForceMaxFeatures = 500;

/// Reference semantics for execute: enumerates every injective tuple of
/// features and checks it in full. Throws GuardViolation on large inputs.
std::vector<SpotMatch> brute_force(const ImrQuery& query, std::span<const Feature> features, const SearchArea& area,
                                   const SearchParams& params);

}  // namespace spot
