#pragma once

#include <string>

#include "spot/error.hpp"
#include "spot/imr/imr.hpp"
#include "spot/vocab/vocabulary.hpp"

namespace spot {

class NotRenderable : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "NotRenderable"; }
};

/// "Find a restaurant within 200 m of a fountain in Bonn".
///
/// Each node is named by the first descriptor of its primary bundle (the
/// bundle with the most predicates all present on the node). Companion
/// predicates are not expressed. Distance phrases only link neighbouring
/// mentions, so the edge graph must be a set of simple paths; each path is
/// read from its lower-numbered end and paths are joined with "and".
/// Throws NotRenderable for a node without a bundle or for an edge graph with
/// a cycle or a node of degree three or more.
std::string render_template_sentence(const ImrQuery& query, const Vocabulary& vocabulary);

/// "200 m", or "2 km" when the distance is a whole number of kilometres.
std::string format_distance(double meters);

}  // namespace spot
