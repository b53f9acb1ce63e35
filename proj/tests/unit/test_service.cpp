#include <doctest.h>

#include <filesystem>
#include <map>
#include <thread>

#include <unistd.h>

#include <httplib.h>

#include "../support/fixtures.hpp"
#include "../support/service_goldens.hpp"
#include "spot/ingest/snapshot.hpp"
#include "spot/server/config.hpp"
#include "spot/server/http_server.hpp"
#include "spot/server/service.hpp"

using namespace spot;
using nlohmann::json;

namespace {

json body_of(const HttpResponse& r) { return json::parse(r.body); }

HttpResponse named_case(const std::string& name) {
  for (const auto& c : spot::test::golden_cases()) {
    if (c.name == name) return spot::test::run_case(*spot::test::toy_service(), c);
  }
  throw std::logic_error("no golden case " + name);
}

/// Fresh scratch directory, removed on destruction.
struct ScratchDir {
  std::filesystem::path path;
  ScratchDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("spot-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~ScratchDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("server") {

TEST_CASE("golden responses") {
  const auto outcomes = spot::test::check_goldens(*spot::test::toy_service());
  CHECK(outcomes.size() == spot::test::golden_cases().size());
  for (const auto& o : outcomes) CHECK_MESSAGE(o.matched, o.name << ": " << o.detail);
}

TEST_CASE("search semantics behind the goldens") {
  auto r = named_case("search_imr_bbox");
  REQUIRE(r.status == 200);
  auto b = body_of(r);
  // One spot: two members and a center.
  CHECK(b["spots"]["features"].size() == 3);
  // Canonical order puts the fountain first: one fountain, two restaurants.
  CHECK(b["imr"]["nodes"][0]["name"] == "fountain");
  CHECK(b["stats"]["candidates"] == json{{"0", 1}, {"1", 2}});
  CHECK(b["imr"]["edges"][0]["maxDistanceM"] == 100.0);

  b = body_of(named_case("search_sentence_named"));
  CHECK(b["imr"]["area"] == json{{"type", "named"}, {"value", "Bonn"}});
  CHECK(b["spots"]["features"].size() == 3);
  CHECK(b["spots"]["features"][0]["id"] == "n2");
  CHECK(b["spots"]["features"][1]["id"] == "n1");

  b = body_of(named_case("search_sentence_bbox_limit"));
  CHECK(b["spots"]["features"].size() == 2);

  b = body_of(named_case("search_no_match"));
  CHECK(b["spots"]["features"].empty());

  b = body_of(named_case("search_bbox_required"));
  CHECK(b["code"] == "AreaRequired");
  b = body_of(named_case("search_unknown_area"));
  CHECK(b["code"] == "AreaNotFound");
  b = body_of(named_case("search_invalid_imr"));
  CHECK(b["code"] == "InvalidImr");
  CHECK(b["details"] == json{"/edges/0/dst: unknown node 7"});
  b = body_of(named_case("search_no_objects"));
  CHECK(b["code"] == "NoObjectsFound");
  CHECK(body_of(named_case("search_malformed_json"))["code"] == "InvalidBody");
  CHECK(body_of(named_case("search_sentence_too_long"))["code"] == "SentenceTooLong");

  b = body_of(named_case("translate_ok"));
  CHECK(b["area"]["value"] == "Beuel");
  CHECK(b["nodes"].size() == 2);

  CHECK(body_of(named_case("areas_prefix")) == json{"Bad Godesberg", "Beuel", "Bonn"});
  CHECK(body_of(named_case("areas_all")).size() == 5);
  CHECK(body_of(named_case("health")) == json{{"status", "ok"}, {"features", 5}});
}

TEST_CASE("service limits") {
  const auto& base = *spot::test::toy_service();
  Service tight(std::shared_ptr<const FeatureStore>(std::shared_ptr<const Service>{}, &base.store()),
                std::shared_ptr<const Translator>(std::shared_ptr<const Service>{}, &base.translator()), {1, 10});
  CHECK(tight.search(R"({"sentence":"restaurant","bbox":[7.09,50.73,7.12,50.75],"limit":2})").status == 400);
  // No explicit limit: clamped to the configured maximum of one spot.
  const auto r = tight.search(R"({"sentence":"restaurant","bbox":[7.09,50.73,7.12,50.75]})");
  CHECK(r.status == 200);
  CHECK(body_of(r)["spots"]["features"].size() == 2);
  // Ten code points, more than ten bytes.
  CHECK(tight.translate(R"({"sentence":"a café ééé"})").status != 400);
  CHECK(body_of(tight.translate(R"({"sentence":"a café éééé"})"))["code"] == "SentenceTooLong");
  CHECK(utf8_length("café") == 4);
}

TEST_CASE("translator failures map to 502") {
  auto store = std::make_shared<const FeatureStore>(spot::test::toy_features());
  auto mock = std::make_shared<MockTranslator>();
  mock->add("broken", json::object());
  Service s(store, mock);
  auto r = s.translate(R"({"sentence":"broken"})");
  CHECK(r.status == 502);
  CHECK(body_of(r)["code"] == "TranslatorFormatInvalid");
  CHECK(body_of(r)["details"].size() == 4);
  r = s.search(R"({"sentence":"unknown","bbox":[7.09,50.73,7.12,50.75]})");
  CHECK(r.status == 502);
  CHECK(body_of(r)["code"] == "TranslatorUnavailable");
}

TEST_CASE("translator selection") {
  ParserConfig parser;
  parser.vocabulary = &spot::test::shipped_vocabulary();
  CHECK(make_translator("baseline", parser)->name() == "baseline");
  CHECK(make_translator("endpoint:http://localhost:9/x", parser)->name() == "endpoint:http://localhost:9/x");
  CHECK(make_translator("http://localhost:9/x", parser)->name() == "endpoint:http://localhost:9/x");
  CHECK_THROWS_AS(make_translator("gpt", parser), ConfigError);
}

TEST_CASE("config parsing and environment") {
  ScratchDir dir;
  spot::write_snapshot_file(dir.file("toy.snap"), spot::test::toy_features());
  spot::test::write_file(dir.file("config.json"), R"({"snapshot":"toy.snap","vocabulary":")" +
                                                      spot::test::data_path("bundles.jsonl") +
                                                      R"(","port":9001,"max_limit":50,"request_timeout_ms":2500})");
  auto c = ServiceConfig::load(dir.file("config.json"));
  CHECK(c.snapshot_path == dir.file("toy.snap"));
  CHECK(c.port == 9001);
  CHECK(c.max_limit == 50);
  CHECK(c.request_timeout == std::chrono::milliseconds(2500));
  CHECK(c.translator == "baseline");
  CHECK_NOTHROW(c.check());

  std::map<std::string, std::string> env{{"SPOT_PORT", "9100"}, {"SPOT_SNAPSHOT", "/nonexistent.snap"}};
  auto getenv = [&](const char* k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  auto overridden = c;
  overridden.apply_env(getenv);
  CHECK(overridden.port == 9100);
  CHECK(overridden.snapshot_path == "/nonexistent.snap");
  CHECK(overridden.vocabulary_path == c.vocabulary_path);
  CHECK_THROWS_AS(overridden.check(), ConfigError);
  env = {{"SPOT_PORT", "http"}};
  CHECK_THROWS_AS(c.apply_env(getenv), ConfigError);

  CHECK_THROWS_AS(ServiceConfig::from_json(json{{"snapshot", "x"}, {"colour", "blue"}}), ConfigError);
  CHECK_THROWS_AS(ServiceConfig::from_json(json{{"port", "eighty"}}), ConfigError);
  CHECK_THROWS_AS(ServiceConfig::from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(ServiceConfig::load(dir.file("missing.json")), ConfigError);
  auto bad_port = c;
  bad_port.port = 70000;
  CHECK_THROWS_AS(bad_port.check(), ConfigError);

  const auto service = Service::from_config(c);
  CHECK(body_of(service.health())["features"] == 5);
  // Without a gazetteer file the parser knows every resolvable area; TOY has none.
  CHECK(body_of(service.translate(R"({"sentence":"a tree in Bonn"})"))["area"]["type"] == "bbox");
}

TEST_CASE("name lists") {
  ScratchDir dir;
  spot::test::write_file(dir.file("names.txt"), "# places\n  Bonn \n\nBeuel\r\n");
  CHECK(read_name_list(dir.file("names.txt")) == std::vector<std::string>{"Bonn", "Beuel"});
  CHECK_THROWS_AS(read_name_list(dir.file("nope.txt")), ConfigError);
}

TEST_CASE("http front end") {
  const auto service = spot::test::toy_service();
  HttpServerOptions options;
  options.port = 0;
  options.cors_origin = "http://localhost:5173";
  HttpServer server(*service, options);
  const int port = server.bind();
  std::thread loop([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(2);
  httplib::Result res;
  for (int attempt = 0; attempt < 50 && !(res = client.Get("/api/health")); ++attempt) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["status"] == "ok");
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
  CHECK(res->get_header_value("Content-Type") == "application/json");

  res = client.Post("/api/search", R"({"sentence":"a restaurant near a fountain","bbox":[7.09,50.73,7.12,50.75]})",
                    "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["spots"]["features"].size() == 3);

  res = client.Post("/api/search", R"({"sentence":"a restaurant near a fountain"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 422);
  CHECK(json::parse(res->body)["code"] == "AreaRequired");

  res = client.Post("/api/translate", R"({"sentence":"a tree"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);

  res = client.Get("/api/areas?q=b");
  REQUIRE(res);
  CHECK(json::parse(res->body) == json{"Bad Godesberg", "Beuel", "Bonn"});
  res = client.Get("/api/areas?q=s%C3%BC");
  REQUIRE(res);
  CHECK(json::parse(res->body) == json{"Südstadt"});

  res = client.Options("/api/search");
  REQUIRE(res);
  CHECK(res->status == 204);
  CHECK(res->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

  res = client.Get("/api/nothing");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["code"] == "NotFound");

  server.stop();
  loop.join();
}

}  // TEST_SUITE
