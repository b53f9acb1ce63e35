#include "spot/engine/tag_index.hpp"

#include <algorithm>
#include <iterator>

namespace spot {

namespace {

std::string tag_key(std::string_view k, std::string_view v) {
  std::string s;
  s.reserve(k.size() + v.size() + 1);
  s.append(k).push_back('\0');
  s.append(v);
  return s;
}

}  // namespace

TagIndex TagIndex::build(std::span<const Feature> features) {
  TagIndex index;
  for (std::uint32_t i = 0; i < features.size(); ++i) {
    for (const auto& [k, v] : features[i].tags) {
      index.by_tag_[tag_key(k, v)].push_back(i);
      index.by_key_[k].push_back(i);
    }
  }
  return index;
}

const std::vector<std::uint32_t>& TagIndex::empty() {
  static const std::vector<std::uint32_t> none;
  return none;
}

const std::vector<std::uint32_t>& TagIndex::lookup(
    const std::unordered_map<std::string, std::vector<std::uint32_t>>& map, const std::string& key) const {
  auto it = map.find(key);
  return it == map.end() ? empty() : it->second;
}

std::vector<std::uint32_t> TagIndex::candidates(const TagPredicate& p) const {
  switch (p.op) {
    case PredicateOp::exists: return lookup(by_key_, p.key);
    case PredicateOp::eq: return p.values.empty() ? std::vector<std::uint32_t>{} : lookup(by_tag_, tag_key(p.key, p.values.front()));
    case PredicateOp::one_of: {
      std::vector<std::uint32_t> out;
      for (const auto& v : p.values) {
        const auto& list = lookup(by_tag_, tag_key(p.key, v));
        std::vector<std::uint32_t> merged;
        std::set_union(out.begin(), out.end(), list.begin(), list.end(), std::back_inserter(merged));
        out = std::move(merged);
      }
      return out;
    }
  }
  return {};
}

std::vector<std::uint32_t> TagIndex::candidates(const ImrNode& node) const {
  if (node.filters.empty()) return {};
  std::vector<std::uint32_t> out = candidates(node.filters.front());
  for (std::size_t i = 1; i < node.filters.size() && !out.empty(); ++i) {
    const auto next = candidates(node.filters[i]);
    std::vector<std::uint32_t> kept;
    std::set_intersection(out.begin(), out.end(), next.begin(), next.end(), std::back_inserter(kept));
    out = std::move(kept);
  }
  return out;
}

}  // namespace spot
