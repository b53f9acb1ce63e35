#include "spot/imr/validate.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "spot/imr/codec.hpp"

namespace spot {

using nlohmann::json;

namespace {

class Checker {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& message) { errors.push_back(path + ": " + message); }

  std::optional<ImrArea> area(const json& j) {
    if (!j.is_object()) {
      fail("/area", "must be an object");
      return std::nullopt;
    }
    auto type = j.find("type");
    if (type == j.end() || !type->is_string()) {
      fail("/area/type", "must be \"named\" or \"bbox\"");
      return std::nullopt;
    }
    if (*type == "bbox") return ImrArea::bbox();
    if (*type != "named") {
      fail("/area/type", "must be \"named\" or \"bbox\"");
      return std::nullopt;
    }
    auto value = j.find("value");
    if (value == j.end() || !value->is_string() || value->get_ref<const std::string&>().empty()) {
      fail("/area/value", "named area needs a non-empty string");
      return std::nullopt;
    }
    return ImrArea::named(value->get<std::string>());
  }

  std::optional<TagPredicate> predicate(const json& j, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "must be an object");
      return std::nullopt;
    }
    bool ok = true;
    TagPredicate p;
    auto key = j.find("key");
    if (key == j.end() || !key->is_string() || key->get_ref<const std::string&>().empty()) {
      fail(path + "/key", "must be a non-empty string");
      ok = false;
    } else {
      p.key = key->get<std::string>();
    }
    auto op = j.find("op");
    auto value = j.find("value");
    if (op == j.end() || !op->is_string()) {
      fail(path + "/op", "must be one of eq, one_of, exists");
      return std::nullopt;
    }
    const auto& op_text = op->get_ref<const std::string&>();
    if (op_text == "eq") {
      p.op = PredicateOp::eq;
      if (value == j.end() || !value->is_string()) {
        fail(path + "/value", "eq needs a string value");
        ok = false;
      } else {
        p.values = {value->get<std::string>()};
      }
    } else if (op_text == "one_of") {
      p.op = PredicateOp::one_of;
      if (value == j.end() || !value->is_array() || value->empty()) {
        fail(path + "/value", "one_of needs a non-empty array of strings");
        ok = false;
      } else {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < value->size(); ++i) {
          const auto& v = (*value)[i];
          const auto vpath = path + "/value/" + std::to_string(i);
          if (!v.is_string()) {
            fail(vpath, "must be a string");
            ok = false;
          } else if (!seen.insert(v.get<std::string>()).second) {
            fail(vpath, "duplicate value \"" + v.get<std::string>() + "\"");
            ok = false;
          } else {
            p.values.push_back(v.get<std::string>());
          }
        }
      }
    } else if (op_text == "exists") {
      p.op = PredicateOp::exists;
      if (value != j.end()) {
        fail(path + "/value", "exists takes no value");
        ok = false;
      }
    } else {
      fail(path + "/op", "unknown op \"" + op_text + "\"");
      return std::nullopt;
    }
    if (!ok) return std::nullopt;
    return p;
  }

  std::optional<ImrNode> node(const json& j, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "must be an object");
      return std::nullopt;
    }
    bool ok = true;
    ImrNode n;
    auto id = j.find("id");
    if (id == j.end() || !id->is_number_integer() || id->get<std::int64_t>() < 0 ||
        id->get<std::int64_t>() > std::numeric_limits<int>::max()) {
      fail(path + "/id", "must be a non-negative integer");
      ok = false;
    } else {
      n.id = id->get<int>();
    }
    if (auto name = j.find("name"); name != j.end()) {
      if (!name->is_string()) {
        fail(path + "/name", "must be a string");
        ok = false;
      } else {
        n.name = name->get<std::string>();
      }
    }
    auto filters = j.find("filters");
    if (filters == j.end() || !filters->is_array() || filters->empty()) {
      fail(path + "/filters", "must be a non-empty array");
      return std::nullopt;
    }
    std::map<std::string, std::size_t> eq_at;
    for (std::size_t i = 0; i < filters->size(); ++i) {
      const auto fpath = path + "/filters/" + std::to_string(i);
      auto p = predicate((*filters)[i], fpath);
      if (!p) {
        ok = false;
        continue;
      }
      if (p->op == PredicateOp::eq) {
        auto [it, inserted] = eq_at.emplace(p->key, n.filters.size());
        if (!inserted && n.filters[it->second].values != p->values) {
          fail(fpath, "contradicts another eq predicate on key \"" + p->key + "\"");
          ok = false;
        }
      }
      n.filters.push_back(std::move(*p));
    }
    if (!ok) return std::nullopt;
    return n;
  }

  std::optional<ImrEdge> edge(const json& j, const std::string& path, const std::set<int>& ids) {
    if (!j.is_object()) {
      fail(path, "must be an object");
      return std::nullopt;
    }
    bool ok = true;
    ImrEdge e;
    auto endpoint = [&](const char* field, int& out) {
      auto it = j.find(field);
      const auto epath = path + "/" + field;
      if (it == j.end() || !it->is_number_integer()) {
        fail(epath, "must be an integer node id");
        ok = false;
        return;
      }
      const auto value = it->get<std::int64_t>();
      if (value < 0 || value > std::numeric_limits<int>::max() || !ids.count(static_cast<int>(value))) {
        fail(epath, "unknown node " + std::to_string(value));
        ok = false;
        return;
      }
      out = static_cast<int>(value);
    };
    endpoint("src", e.src);
    endpoint("dst", e.dst);
    if (ok && e.src == e.dst) {
      fail(path, "src and dst must differ");
      ok = false;
    }
    auto d = j.find("maxDistanceM");
    if (d == j.end() || !d->is_number() || !std::isfinite(d->get<double>()) || d->get<double>() <= 0.0) {
      fail(path + "/maxDistanceM", "must be a positive number");
      ok = false;
    } else {
      e.max_distance_m = d->get<double>();
    }
    if (!ok) return std::nullopt;
    return e;
  }
};

}  // namespace

Validation validate(const json& doc) {
  Checker c;
  Validation out;
  if (!doc.is_object()) {
    out.errors.push_back("/: must be an object");
    return out;
  }
  ImrQuery q;
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer() || version->get<std::int64_t>() != kImrVersion) {
    c.fail("/version", "must be 1");
  }

  auto area = doc.find("area");
  if (area == doc.end()) {
    c.fail("/area", "missing");
  } else if (auto a = c.area(*area)) {
    q.area = std::move(*a);
  }

  std::set<int> ids;
  auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array() || nodes->empty()) {
    c.fail("/nodes", "must be a non-empty array");
  } else {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const auto path = "/nodes/" + std::to_string(i);
      // A node rejected for its filters still declares its id, so edges to it
      // are not reported a second time as unknown.
      const auto& raw = (*nodes)[i];
      bool fresh = true;
      if (raw.is_object()) {
        if (auto id = raw.find("id"); id != raw.end() && id->is_number_integer() && id->get<std::int64_t>() >= 0 &&
                                      id->get<std::int64_t>() <= std::numeric_limits<int>::max()) {
          fresh = ids.insert(id->get<int>()).second;
        }
      }
      auto n = c.node(raw, path);
      if (!n) continue;
      if (!fresh) {
        c.fail(path + "/id", "duplicate id " + std::to_string(n->id));
        continue;
      }
      q.nodes.push_back(std::move(*n));
    }
  }

  auto edges = doc.find("edges");
  if (edges == doc.end() || !edges->is_array()) {
    c.fail("/edges", "must be an array");
  } else {
    std::map<std::pair<int, int>, std::size_t> seen;
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const auto path = "/edges/" + std::to_string(i);
      auto e = c.edge((*edges)[i], path, ids);
      if (!e) continue;
      const auto key = std::minmax(e->src, e->dst);
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted) {
        c.fail(path, "duplicates /edges/" + std::to_string(it->second));
        continue;
      }
      q.edges.push_back(*e);
    }
  }

  out.errors = std::move(c.errors);
  if (out.errors.empty()) out.query = std::move(q);
  return out;
}

std::vector<std::string> validate(const ImrQuery& query) {
  return validate(json::parse(to_json(query).dump())).errors;
}

}  // namespace spot
