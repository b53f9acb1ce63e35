#include <charconv>
#include <sstream>

#include "spot/engine/output.hpp"
#include "spot/imr/canonical.hpp"

namespace spot {

namespace {

std::string quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

std::string predicate_sql(const std::string& alias, const TagPredicate& p) {
  switch (p.op) {
    case PredicateOp::exists: return alias + ".tags ? " + quote(p.key);
    case PredicateOp::eq: return alias + ".tags->>" + quote(p.key) + " = " + quote(p.values.front());
    case PredicateOp::one_of: {
      std::string list;
      for (const auto& v : p.values) {
        if (!list.empty()) list += ", ";
        list += quote(v);
      }
      return alias + ".tags->>" + quote(p.key) + " IN (" + list + ")";
    }
  }
  return {};
}

}  // namespace

std::string emit_sql(const ImrQuery& input) {
  const ImrQuery q = canonicalize(input);
  const std::size_t n = q.nodes.size();
  auto alias = [](int id) { return "n" + std::to_string(id); };

  std::ostringstream sql;
  sql << "SELECT ";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) sql << ", ";
    sql << alias(q.nodes[i].id) << ".id AS " << alias(q.nodes[i].id) << "_id";
  }
  sql << " FROM ";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) sql << ", ";
    sql << "features AS " << alias(q.nodes[i].id);
  }

  std::vector<std::string> where;
  for (const auto& node : q.nodes) {
    for (const auto& p : node.filters) where.push_back(predicate_sql(alias(node.id), p));
  }
  for (const auto& e : q.edges) {
    where.push_back("ST_DWithin(" + alias(e.src) + ".geom::geography, " + alias(e.dst) + ".geom::geography, " +
                    format_number(e.max_distance_m) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      where.push_back(alias(q.nodes[i].id) + ".id <> " + alias(q.nodes[j].id) + ".id");
    }
  }
  for (const auto& node : q.nodes) {
    if (q.area.kind == AreaKind::named) {
      where.push_back("ST_Within(" + alias(node.id) + ".geom, (SELECT geom FROM areas WHERE name = " +
                      quote(q.area.value) + "))");
    } else {
      where.push_back("ST_Within(" + alias(node.id) + ".geom, ST_MakeEnvelope($1,$2,$3,$4,4326))");
    }
  }

  sql << " WHERE ";
  for (std::size_t i = 0; i < where.size(); ++i) {
    if (i) sql << " AND ";
    sql << where[i];
  }
  sql << ";";
  return sql.str();
}

}  // namespace spot
