#pragma once

#include "spot/imr/imr.hpp"

namespace spot {

struct SemanticScore {
  bool exact = false;
  int area = 0;
  double node_f1 = 0.0;
  double edge_f1 = 0.0;
  double overall = 0.0;
};

/// Relative tolerance under which a predicted edge distance matches gold.
inline constexpr double kEdgeDistanceTolerance = 0.1;
/// Node alignment is exhaustive up to this many nodes per side, greedy above.
inline constexpr std::size_t kExhaustiveAlignmentMax = 6;

/// Agreement of a predicted query with gold. Nodes are aligned injectively to
/// maximise the summed Jaccard similarity of their predicate sets (ties go to
/// the alignment matching more edges); an edge matches when its aligned
/// endpoints carry a gold edge within 10% of the gold distance.
SemanticScore semantic_score(const ImrQuery& predicted, const ImrQuery& gold);

}  // namespace spot
