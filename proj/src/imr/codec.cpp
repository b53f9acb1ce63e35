#include "spot/imr/codec.hpp"

#include "spot/imr/validate.hpp"

namespace spot {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid IMR";
  for (const auto& e : errors) out += "; " + e;
  return out;
}

}  // namespace

ImrInvalid::ImrInvalid(std::vector<std::string> errors)
    : Error(join_errors(errors)), errors_(std::move(errors)) {}

ordered_json predicate_to_json(const TagPredicate& p) {
  ordered_json j;
  j["key"] = p.key;
  j["op"] = to_string(p.op);
  switch (p.op) {
    case PredicateOp::eq: j["value"] = p.values.empty() ? std::string() : p.values.front(); break;
    case PredicateOp::one_of: j["value"] = p.values; break;
    case PredicateOp::exists: break;
  }
  return j;
}

ordered_json to_json(const ImrQuery& q) {
  ordered_json j;
  j["version"] = q.version;
  ordered_json area;
  area["type"] = q.area.kind == AreaKind::named ? "named" : "bbox";
  if (q.area.kind == AreaKind::named) area["value"] = q.area.value;
  j["area"] = std::move(area);

  auto nodes = ordered_json::array();
  for (const auto& n : q.nodes) {
    ordered_json node;
    node["id"] = n.id;
    node["name"] = n.name;
    auto filters = ordered_json::array();
    for (const auto& p : n.filters) filters.push_back(predicate_to_json(p));
    node["filters"] = std::move(filters);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);

  auto edges = ordered_json::array();
  for (const auto& e : q.edges) {
    ordered_json edge;
    edge["src"] = e.src;
    edge["dst"] = e.dst;
    edge["maxDistanceM"] = e.max_distance_m;
    edges.push_back(std::move(edge));
  }
  j["edges"] = std::move(edges);
  return j;
}

std::string encode(const ImrQuery& q) { return to_json(q).dump(); }

ImrQuery from_json(const json& document) {
  auto v = validate(document);
  if (!v.valid()) throw ImrInvalid(std::move(v.errors));
  return std::move(*v.query);
}

ImrQuery decode(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ImrSyntaxError(e.what(), e.byte);
  }
  return from_json(doc);
}

std::string predicate_signature(const TagPredicate& p) { return predicate_to_json(p).dump(); }

std::string node_signature(const ImrNode& node) {
  auto filters = ordered_json::array();
  for (const auto& p : node.filters) filters.push_back(predicate_to_json(p));
  return filters.dump();
}

}  // namespace spot
