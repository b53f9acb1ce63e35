#include "spot/imr/imr.hpp"

#include <algorithm>

namespace spot {

std::string_view to_string(PredicateOp op) noexcept {
  switch (op) {
    case PredicateOp::eq: return "eq";
    case PredicateOp::one_of: return "one_of";
    case PredicateOp::exists: return "exists";
  }
  return "eq";
}

TagPredicate TagPredicate::eq(std::string key, std::string value) {
  return {std::move(key), PredicateOp::eq, {std::move(value)}};
}

TagPredicate TagPredicate::one_of(std::string key, std::vector<std::string> values) {
  return {std::move(key), PredicateOp::one_of, std::move(values)};
}

TagPredicate TagPredicate::exists(std::string key) { return {std::move(key), PredicateOp::exists, {}}; }

bool TagPredicate::matches(const TagMap& tags) const {
  auto it = tags.find(key);
  if (it == tags.end()) return false;
  switch (op) {
    case PredicateOp::exists: return true;
    case PredicateOp::eq: return !values.empty() && it->second == values.front();
    case PredicateOp::one_of: return std::find(values.begin(), values.end(), it->second) != values.end();
  }
  return false;
}

bool ImrNode::matches(const TagMap& tags) const {
  return std::all_of(filters.begin(), filters.end(), [&](const auto& p) { return p.matches(tags); });
}

const ImrNode* ImrQuery::node(int id) const {
  const int i = index_of(id);
  return i < 0 ? nullptr : &nodes[static_cast<std::size_t>(i)];
}

int ImrQuery::index_of(int id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace spot
