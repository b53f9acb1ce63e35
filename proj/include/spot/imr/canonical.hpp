#pragma once

#include "spot/imr/imr.hpp"

namespace spot {

/// Order-insensitive normal form of a valid query: predicates sorted by
/// (key, op, value) with sorted one_of lists; nodes sorted by filter signature
/// and renumbered 0..n-1; edges rewritten with src < dst and sorted. Ties
/// between nodes with identical filters are broken by the resulting edge list,
/// then by names, so the result does not depend on input order. Idempotent.
ImrQuery canonicalize(const ImrQuery& query);

/// Canonical forms equal, ignoring node display names.
bool same_query(const ImrQuery& a, const ImrQuery& b);

}  // namespace spot
