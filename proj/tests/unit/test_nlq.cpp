#include <doctest.h>

#include <sstream>

#include "../support/fixtures.hpp"
#include "../support/local_server.hpp"
#include "spot/imr/codec.hpp"
#include "spot/imr/validate.hpp"
#include "spot/nlq/baseline_parser.hpp"
#include "spot/nlq/tokenize.hpp"
#include "spot/nlq/translator.hpp"

using namespace spot;
using Strings = std::vector<std::string>;

namespace {

ParserConfig shipped_config() {
  ParserConfig c;
  c.vocabulary = &spot::test::shipped_vocabulary();
  c.gazetteer = spot::test::shipped_gazetteer();
  return c;
}

ImrQuery parse(std::string_view s) { return parse_baseline(s, shipped_config()); }

TagPredicate eq(const char* k, const char* v) { return TagPredicate::eq(k, v); }

}  // namespace

TEST_SUITE("nlq") {

TEST_CASE("tokenize") {
  CHECK(tokenize("Find a Restaurant, within 200m of a fountain!") ==
        Strings{"find", "a", "restaurant", "within", "200", "m", "of", "a", "fountain"});
  CHECK(tokenize("1.5 km.") == Strings{"1.5", "km"});
  CHECK(tokenize("end. Start") == Strings{"end", "start"});
  CHECK(tokenize("café in Südstadt") == Strings{"café", "in", "südstadt"});
  CHECK(tokenize("  ").empty());
  CHECK(join_tokens({"a", "b", "c"}, 1) == "b c");
  CHECK(join_tokens({"a", "b", "c"}, 0, 2) == "a b");
}

TEST_CASE("parser examples") {
  auto q = parse("Find a restaurant within 200 m of a fountain in Bonn");
  CHECK(q.area == ImrArea::named("Bonn"));
  REQUIRE(q.nodes.size() == 2);
  CHECK(q.nodes[0].filters == std::vector<TagPredicate>{eq("amenity", "restaurant")});
  CHECK(q.nodes[1].filters == std::vector<TagPredicate>{eq("amenity", "fountain")});
  CHECK(q.nodes[0].name == "restaurant");
  CHECK(q.edges == std::vector<ImrEdge>{{q.nodes[0].id, q.nodes[1].id, 200.0}});

  q = parse("a tree near a park");
  CHECK(q.area == ImrArea::bbox());
  REQUIRE(q.nodes.size() == 2);
  CHECK(q.nodes[0].filters == std::vector<TagPredicate>{eq("natural", "tree")});
  CHECK(q.nodes[1].filters == std::vector<TagPredicate>{eq("leisure", "park")});
  REQUIRE(q.edges.size() == 1);
  CHECK(q.edges[0].max_distance_m == kDefaultNearDistanceM);

  try {
    parse("find me something nice");
    FAIL("expected NoObjectsFound");
  } catch (const NoObjectsFound& e) {
    CHECK(e.code() == "NoObjectsFound");
    CHECK(e.unconsumed() == "find me something nice");
  }
  CHECK_THROWS_AS(parse("in Bonn"), NoObjectsFound);
}

TEST_CASE("distance phrases and units") {
  struct Case {
    const char* sentence;
    double distance;
  };
  const Case cases[] = {
      {"a bench no more than 1 km from a fountain", 1000.0},
      {"a bench less than 50 metres from a fountain", 50.0},
      {"a bench 300 meters away from a fountain", 300.0},
      {"a bench 300m from a fountain", 300.0},
      {"a bench within 1.5 kilometres of a fountain", 1500.0},
      {"a bench next to a fountain", 100.0},
      {"a bench beside a fountain", 100.0},
      {"a bench close to a fountain", 100.0},
  };
  for (const auto& c : cases) {
    const auto q = parse(c.sentence);
    INFO(c.sentence);
    REQUIRE(q.nodes.size() == 2);
    REQUIRE(q.edges.size() == 1);
    CHECK(q.edges[0].max_distance_m == doctest::Approx(c.distance));
  }
  CHECK(parse("a bench and a fountain").edges.empty());
  CHECK(parse("a bench, a fountain").edges.empty());

  auto custom = shipped_config();
  custom.default_near_distance_m = 250.0;
  CHECK(parse_baseline("a bench near a fountain", custom).edges.at(0).max_distance_m == 250.0);
}

TEST_CASE("chains attach to consecutive mentions") {
  const auto q = parse("a cafe within 100 m of a fountain and a bench within 50 m of a tree in Bad Godesberg");
  CHECK(q.area == ImrArea::named("Bad Godesberg"));
  REQUIRE(q.nodes.size() == 4);
  CHECK(q.edges == std::vector<ImrEdge>{{q.nodes[0].id, q.nodes[1].id, 100.0}, {q.nodes[2].id, q.nodes[3].id, 50.0}});

  const auto path = parse("a cafe within 100 m of a fountain within 50 m of a tree");
  CHECK(path.edges.size() == 2);
}

TEST_CASE("area handling") {
  CHECK(parse("a cafe in südstadt").area == ImrArea::named("Südstadt"));
  CHECK(parse("a cafe in BONN").area == ImrArea::named("Bonn"));
  // An "in" followed by something that is not a known place stays in the text.
  const auto q = parse("a cafe in Atlantis");
  CHECK(q.area == ImrArea::bbox());
  CHECK(q.nodes.size() == 1);
}

TEST_CASE("multi tag bundles") {
  const auto q = parse("a pub");
  REQUIRE(q.nodes.size() == 1);
  REQUIRE(q.nodes[0].filters.size() == 1);
  CHECK(q.nodes[0].filters[0].op == PredicateOp::one_of);
}

TEST_CASE("parser properties") {
  const char* sentences[] = {
      "Find a restaurant within 200 m of a fountain in Bonn", "two cafes", "benches near trees near fountains",
      "restaurant restaurant restaurant", "within 5 km of", "a hotel 20 km away from a park in Beuel",
      "near near near a bench", "a fountain in in Bonn"};
  for (const char* s : sentences) {
    try {
      const auto a = parse(s);
      const auto b = parse(s);
      CHECK(a == b);
      CHECK(validate(a).empty());
    } catch (const NoObjectsFound&) {
    }
  }
}

TEST_CASE("parser configuration errors") {
  ParserConfig none;
  CHECK_THROWS_AS(parse_baseline("a bench", none), std::invalid_argument);
  auto bad = shipped_config();
  bad.default_near_distance_m = 0;
  CHECK_THROWS_AS(parse_baseline("a bench", bad), std::invalid_argument);
}

TEST_CASE("mock translator") {
  std::istringstream in(
      R"({"sentence":"fountains please","imr":{"version":1,"area":{"type":"bbox"},"nodes":[{"id":0,"name":"fountain","filters":[{"key":"amenity","op":"eq","value":"fountain"}]}],"edges":[]}}
{"sentence":"broken","imr":{}}
)");
  const auto mock = MockTranslator::parse(in);
  CHECK(mock.size() == 2);
  CHECK(mock.name() == "mock");
  const auto q = mock.translate("fountains please");
  CHECK(q.nodes.at(0).filters == std::vector<TagPredicate>{eq("amenity", "fountain")});
  CHECK_THROWS_AS(mock.translate("broken"), FormatInvalid);
  CHECK_THROWS_AS(mock.translate("unknown"), TransportError);
}

TEST_CASE("accept model output") {
  try {
    accept_model_output(nlohmann::json::object());
    FAIL("expected FormatInvalid");
  } catch (const FormatInvalid& e) {
    CHECK(e.errors().size() == 4);
    CHECK(e.code() == "FormatInvalid");
  }
}

TEST_CASE("endpoint url parsing") {
  const auto e = HttpEndpoint::parse("http://localhost:9000/translate");
  CHECK(e.host == "localhost");
  CHECK(e.port == 9000);
  CHECK(e.path == "/translate");
  CHECK(e.url() == "http://localhost:9000/translate");
  CHECK(HttpEndpoint::parse("http://example.org").port == 80);
  CHECK(HttpEndpoint::parse("http://example.org").path == "/");
  CHECK_THROWS_AS(HttpEndpoint::parse("https://example.org"), std::invalid_argument);
  CHECK_THROWS_AS(HttpEndpoint::parse("http://:80/x"), std::invalid_argument);
  CHECK_THROWS_AS(HttpEndpoint::parse("http://host:notaport/"), std::invalid_argument);
}

TEST_CASE("http translator") {
  std::string last_body;
  spot::test::LocalServer server("/translate", [&](const httplib::Request& req, httplib::Response& res) {
    last_body = req.body;
    const auto sentence = nlohmann::json::parse(req.body).at("sentence").get<std::string>();
    if (sentence == "empty") {
      res.set_content("{}", "application/json");
    } else if (sentence == "garbage") {
      res.set_content("not json", "text/plain");
    } else if (sentence == "fail") {
      res.status = 500;
      res.set_content("{}", "application/json");
    } else {
      res.set_content(encode(spot::test::toy_restaurant_fountain()), "application/json");
    }
  });
  HttpTranslator t(HttpEndpoint::parse(server.url("/translate")));
  CHECK(t.name() == "endpoint:" + server.url("/translate"));
  CHECK(t.translate("restaurants by fountains") == spot::test::toy_restaurant_fountain());
  CHECK(nlohmann::json::parse(last_body) == nlohmann::json{{"sentence", "restaurants by fountains"}});
  CHECK_THROWS_AS(t.translate("empty"), FormatInvalid);
  CHECK_THROWS_AS(t.translate("garbage"), TransportError);
  CHECK_THROWS_AS(t.translate("fail"), TransportError);
}

TEST_CASE("unreachable endpoint") {
  const int port = spot::test::closed_port();
  HttpTranslator t(HttpEndpoint::parse("http://127.0.0.1:" + std::to_string(port) + "/translate"),
                   std::chrono::milliseconds(2000));
  try {
    t.translate("anything");
    FAIL("expected a transport failure");
  } catch (const TransportError&) {
  } catch (const TranslatorTimeout&) {
  }
}

TEST_CASE("slow endpoint times out") {
  spot::test::LocalServer server("/slow", [](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content("{}", "application/json");
  });
  HttpTranslator t(HttpEndpoint::parse(server.url("/slow")), std::chrono::milliseconds(150));
  CHECK_THROWS_AS(t.translate("x"), TranslatorTimeout);
}

}  // TEST_SUITE
