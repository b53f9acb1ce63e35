#include <doctest.h>

#include <algorithm>
#include <random>

#include "spot/imr/canonical.hpp"
#include "spot/imr/codec.hpp"
#include "spot/imr/score.hpp"
#include "spot/imr/validate.hpp"

using namespace spot;
using nlohmann::json;

namespace {

const char* kMinimal =
    R"({"version":1,"area":{"type":"bbox"},"nodes":[{"id":0,"name":"fountain","filters":[{"key":"amenity","op":"eq","value":"fountain"}]}],"edges":[]})";

json two_nodes() {
  return json::parse(R"({"version":1,"area":{"type":"named","value":"Bonn"},
    "nodes":[{"id":0,"name":"restaurant","filters":[{"key":"amenity","op":"eq","value":"restaurant"}]},
             {"id":1,"name":"fountain","filters":[{"key":"amenity","op":"eq","value":"fountain"}]}],
    "edges":[{"src":0,"dst":1,"maxDistanceM":200}]})");
}

/// Random valid query; ids are scattered so renumbering is exercised.
ImrQuery random_query(std::mt19937_64& rng) {
  static const std::vector<std::string> keys{"amenity", "shop", "cuisine", "natural", "leisure"};
  static const std::vector<std::string> values{"a", "b", "c", "d"};
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  ImrQuery q;
  q.area = pick(2) ? ImrArea::named("Bonn") : ImrArea::bbox();
  const std::size_t n = 1 + pick(5);
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i * 3 + pick(3));
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    ImrNode node{ids[i], "n" + std::to_string(i), {}};
    std::vector<std::string> ks = keys;
    std::shuffle(ks.begin(), ks.end(), rng);
    const std::size_t m = 1 + pick(3);
    for (std::size_t j = 0; j < m; ++j) {
      switch (pick(3)) {
        case 0: node.filters.push_back(TagPredicate::eq(ks[j], values[pick(2)])); break;
        case 1: {
          auto vs = values;
          std::shuffle(vs.begin(), vs.end(), rng);
          vs.resize(1 + pick(3));
          node.filters.push_back(TagPredicate::one_of(ks[j], vs));
          break;
        }
        default: node.filters.push_back(TagPredicate::exists(ks[j]));
      }
    }
    q.nodes.push_back(std::move(node));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (pick(2)) continue;
      const double d = static_cast<double>(10 * (1 + pick(100)));
      if (pick(2)) q.edges.push_back({ids[a], ids[b], d});
      else q.edges.push_back({ids[b], ids[a], d});
    }
  }
  std::shuffle(q.edges.begin(), q.edges.end(), rng);
  return q;
}

ImrQuery permuted(const ImrQuery& q, std::mt19937_64& rng) {
  ImrQuery p = q;
  std::shuffle(p.nodes.begin(), p.nodes.end(), rng);
  for (auto& n : p.nodes) std::shuffle(n.filters.begin(), n.filters.end(), rng);
  for (auto& e : p.edges) {
    if (rng() % 2) std::swap(e.src, e.dst);
  }
  std::shuffle(p.edges.begin(), p.edges.end(), rng);
  return p;
}

}  // namespace

TEST_SUITE("imr") {

TEST_CASE("validate accepts a well formed query") {
  const auto v = validate(two_nodes());
  CHECK(v.valid());
  REQUIRE(v.query);
  CHECK(v.query->nodes.size() == 2);
  CHECK(v.query->edges.at(0).max_distance_m == 200.0);
  CHECK(v.query->area == ImrArea::named("Bonn"));
}

TEST_CASE("validate reports locators") {
  auto doc = two_nodes();
  doc["edges"][0]["dst"] = 7;
  auto v = validate(doc);
  CHECK_FALSE(v.valid());
  CHECK_FALSE(v.query);
  CHECK(v.errors == std::vector<std::string>{"/edges/0/dst: unknown node 7"});

  doc = two_nodes();
  doc["edges"][0]["maxDistanceM"] = 0;
  CHECK(validate(doc).errors == std::vector<std::string>{"/edges/0/maxDistanceM: must be a positive number"});

  doc = two_nodes();
  doc["edges"][0]["dst"] = 0;
  CHECK(validate(doc).errors == std::vector<std::string>{"/edges/0: src and dst must differ"});

  doc = two_nodes();
  doc["edges"].push_back({{"src", 1}, {"dst", 0}, {"maxDistanceM", 50}});
  CHECK(validate(doc).errors == std::vector<std::string>{"/edges/1: duplicates /edges/0"});

  doc = two_nodes();
  doc["nodes"][1]["id"] = 0;
  CHECK(validate(doc).errors.at(0) == "/nodes/1/id: duplicate id 0");

  doc = two_nodes();
  doc["nodes"][0]["filters"].push_back({{"key", "amenity"}, {"op", "eq"}, {"value", "cafe"}});
  CHECK(validate(doc).errors == std::vector<std::string>{"/nodes/0/filters/1: contradicts another eq predicate on key \"amenity\""});

  doc = two_nodes();
  doc["nodes"][0]["filters"][0] = {{"key", "amenity"}, {"op", "one_of"}, {"value", {"a", "a"}}};
  CHECK(validate(doc).errors == std::vector<std::string>{"/nodes/0/filters/0/value/1: duplicate value \"a\""});

  doc = two_nodes();
  doc["nodes"][0]["filters"][0] = {{"key", ""}, {"op", "exists"}};
  CHECK(validate(doc).errors == std::vector<std::string>{"/nodes/0/filters/0/key: must be a non-empty string"});

  doc = two_nodes();
  doc["area"] = {{"type", "named"}, {"value", ""}};
  CHECK(validate(doc).errors == std::vector<std::string>{"/area/value: named area needs a non-empty string"});

  doc = two_nodes();
  doc["version"] = 2;
  CHECK(validate(doc).errors == std::vector<std::string>{"/version: must be 1"});

  doc = two_nodes();
  doc["nodes"] = json::array();
  CHECK(validate(doc).errors.at(0) == "/nodes: must be a non-empty array");

  CHECK(validate(json::array()).errors == std::vector<std::string>{"/: must be an object"});
}

TEST_CASE("validate collects every violation") {
  auto doc = two_nodes();
  doc["version"] = 3;
  doc["edges"][0]["maxDistanceM"] = -1;
  doc["nodes"][1]["filters"] = json::array();
  const auto v = validate(doc);
  // Node 1 is rejected but still declares its id, so the edge endpoint is not flagged.
  CHECK(v.errors == std::vector<std::string>{"/version: must be 1", "/nodes/1/filters: must be a non-empty array",
                                             "/edges/0/maxDistanceM: must be a positive number"});
  CHECK_FALSE(v.query.has_value());
}

TEST_CASE("codec exact document") {
  ImrQuery q;
  q.area = ImrArea::bbox();
  q.nodes.push_back({0, "fountain", {TagPredicate::eq("amenity", "fountain")}});
  CHECK(encode(q) == kMinimal);
  CHECK(decode(kMinimal) == q);

  auto named = two_nodes();
  CHECK(encode(from_json(named)) ==
        R"({"version":1,"area":{"type":"named","value":"Bonn"},"nodes":[{"id":0,"name":"restaurant","filters":[{"key":"amenity","op":"eq","value":"restaurant"}]},{"id":1,"name":"fountain","filters":[{"key":"amenity","op":"eq","value":"fountain"}]}],"edges":[{"src":0,"dst":1,"maxDistanceM":200.0}]})");

  ImrQuery ops;
  ops.nodes.push_back({0, "x", {TagPredicate::one_of("shop", {"a", "b"}), TagPredicate::exists("name")}});
  CHECK(encode(ops) ==
        R"({"version":1,"area":{"type":"bbox"},"nodes":[{"id":0,"name":"x","filters":[{"key":"shop","op":"one_of","value":["a","b"]},{"key":"name","op":"exists"}]}],"edges":[]})");
}

TEST_CASE("decode errors") {
  CHECK_THROWS_AS(decode(R"({"version":1,"area":{"type":"bbox"},"edges":[]})"), ImrInvalid);
  try {
    decode(R"({"version":1,"area":{"type":"bbox"},"edges":[]})");
  } catch (const ImrInvalid& e) {
    CHECK(e.errors() == std::vector<std::string>{"/nodes: must be a non-empty array"});
    CHECK(e.code() == "InvalidImr");
  }
  try {
    decode(R"({"version":1, "area": })");
    FAIL("expected a syntax error");
  } catch (const ImrSyntaxError& e) {
    CHECK(e.byte_offset() == 23);
  }
}

TEST_CASE("canonicalize examples") {
  ImrQuery q;
  q.nodes.push_back({5, "fountain", {TagPredicate::eq("amenity", "fountain")}});
  q.nodes.push_back({2, "bench", {TagPredicate::eq("amenity", "bench")}});
  q.edges.push_back({2, 5, 200.0});
  const auto c = canonicalize(q);
  REQUIRE(c.nodes.size() == 2);
  CHECK(c.nodes[0].name == "bench");
  CHECK(c.nodes[0].id == 0);
  CHECK(c.nodes[1].id == 1);
  CHECK(c.edges == std::vector<ImrEdge>{{0, 1, 200.0}});

  ImrQuery flip;
  flip.nodes.push_back({0, "bench", {TagPredicate::eq("amenity", "bench")}});
  flip.nodes.push_back({1, "fountain", {TagPredicate::eq("amenity", "fountain")}});
  flip.edges.push_back({1, 0, 200.0});
  CHECK(canonicalize(flip).edges == std::vector<ImrEdge>{{0, 1, 200.0}});

  ImrQuery inner;
  inner.nodes.push_back({0, "x", {TagPredicate::one_of("shop", {"c", "a", "b"}), TagPredicate::eq("amenity", "z")}});
  const auto ci = canonicalize(inner);
  CHECK(ci.nodes[0].filters[0] == TagPredicate::eq("amenity", "z"));
  CHECK(ci.nodes[0].filters[1].values == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("canonical form of tied nodes") {
  // Three identical nodes in a path with different edge lengths: any
  // relabelling must land on the same canonical form.
  ImrQuery q;
  for (int i = 0; i < 3; ++i) q.nodes.push_back({i, "bench", {TagPredicate::eq("amenity", "bench")}});
  q.edges = {{0, 1, 50.0}, {1, 2, 300.0}};
  std::mt19937_64 rng(3);
  const auto c = canonicalize(q);
  for (int t = 0; t < 50; ++t) CHECK(canonicalize(permuted(q, rng)) == c);
}

TEST_CASE("canonicalize properties over random queries") {
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 500; ++t) {
    const auto q = random_query(rng);
    REQUIRE(validate(q).empty());
    const auto c = canonicalize(q);
    CHECK(validate(c).empty());
    CHECK(canonicalize(c) == c);
    CHECK(decode(encode(c)) == c);
    CHECK(canonicalize(permuted(q, rng)) == c);
    for (std::size_t i = 0; i < c.nodes.size(); ++i) CHECK(c.nodes[i].id == static_cast<int>(i));
    for (const auto& e : c.edges) CHECK(e.src < e.dst);
    CHECK(std::is_sorted(c.edges.begin(), c.edges.end(), [](const ImrEdge& a, const ImrEdge& b) {
      return std::tie(a.src, a.dst, a.max_distance_m) < std::tie(b.src, b.dst, b.max_distance_m);
    }));
  }
}

TEST_CASE("semantic score examples") {
  const auto gold = from_json(two_nodes());
  auto s = semantic_score(gold, gold);
  CHECK(s.exact);
  CHECK(s.overall == 1.0);

  std::mt19937_64 rng(9);
  s = semantic_score(permuted(gold, rng), gold);
  CHECK(s.exact);
  CHECK(s.overall == 1.0);

  ImrQuery twins;
  twins.area = ImrArea::named("Bonn");
  twins.nodes = {{0, "bench", {TagPredicate::eq("amenity", "bench")}}, {1, "bench", {TagPredicate::eq("amenity", "bench")}}};
  twins.edges = {{0, 1, 100.0}};
  auto no_edge = twins;
  no_edge.edges.clear();
  s = semantic_score(no_edge, twins);
  CHECK(s.node_f1 == 1.0);
  CHECK(s.edge_f1 == 0.0);
  CHECK(s.area == 1);
  CHECK(s.overall == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(s.exact);

  auto other_area = gold;
  other_area.area = ImrArea::bbox();
  s = semantic_score(other_area, gold);
  CHECK(s.area == 0);
  CHECK(s.overall == doctest::Approx(2.0 / 3.0));

  // 10% distance tolerance, relative to gold.
  auto near = gold;
  near.edges[0].max_distance_m = 220.0;
  CHECK(semantic_score(near, gold).edge_f1 == 1.0);
  near.edges[0].max_distance_m = 221.0;
  CHECK(semantic_score(near, gold).edge_f1 == 0.0);

  // Names never affect the score.
  auto renamed = gold;
  renamed.nodes[0].name = "diner";
  s = semantic_score(renamed, gold);
  CHECK(s.exact);
  CHECK(s.overall == 1.0);

  // One of two nodes half right: Jaccard 1/2 over predicate sets.
  ImrQuery partial = gold;
  partial.nodes[0].filters.push_back(TagPredicate::eq("cuisine", "italian"));
  s = semantic_score(partial, gold);
  CHECK(s.node_f1 == doctest::Approx(2.0 * 1.5 / 4.0));
  CHECK(s.edge_f1 == 1.0);

  // Extra predicted node: node_f1 = 2*2/(3+2).
  ImrQuery extra = gold;
  extra.nodes.push_back({9, "tree", {TagPredicate::eq("natural", "tree")}});
  s = semantic_score(extra, gold);
  CHECK(s.node_f1 == doctest::Approx(0.8));
  CHECK(s.edge_f1 == 1.0);
}

TEST_CASE("semantic score properties") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_query(rng);
    const auto b = random_query(rng);
    const auto self = semantic_score(a, a);
    CHECK(self.overall == doctest::Approx(1.0));
    CHECK(self.exact);
    const auto ab = semantic_score(a, b);
    const auto ba = semantic_score(b, a);
    CHECK(ab.exact == ba.exact);
    CHECK(ab.overall >= 0.0);
    CHECK(ab.overall <= 1.0 + 1e-12);
    CHECK(semantic_score(permuted(a, rng), permuted(b, rng)).overall == doctest::Approx(ab.overall));
    CHECK(semantic_score(a, b).overall == ab.overall);  // deterministic
  }
}

TEST_CASE("greedy alignment beyond six nodes") {
  ImrQuery big;
  for (int i = 0; i < 8; ++i) big.nodes.push_back({i, "n", {TagPredicate::eq("k", std::to_string(i))}});
  for (int i = 0; i + 1 < 8; ++i) big.edges.push_back({i, i + 1, 100.0 + i});
  std::mt19937_64 rng(4);
  const auto s = semantic_score(permuted(big, rng), big);
  CHECK(s.exact);
  CHECK(s.node_f1 == 1.0);
  CHECK(s.edge_f1 == 1.0);
}

}  // TEST_SUITE
