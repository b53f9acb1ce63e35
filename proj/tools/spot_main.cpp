// spot: command line front end for the search engine and its data tools.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spot/datagen/dataset.hpp"
#include "spot/engine/output.hpp"
#include "spot/error.hpp"
#include "spot/eval/evaluate.hpp"
#include "spot/imr/canonical.hpp"
#include "spot/imr/codec.hpp"
#include "spot/ingest/ingest.hpp"
#include "spot/ingest/snapshot.hpp"
#include "spot/server/http_server.hpp"
#include "spot/server/service.hpp"
#include "spot/vocab/cooccurrence.hpp"

#ifndef SPOT_DEFAULT_DATA_DIR
#define SPOT_DEFAULT_DATA_DIR "data"
#endif

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

/// Raised for bad invocations that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string data_file(const char* name) { return (fs::path(SPOT_DEFAULT_DATA_DIR) / name).string(); }

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to `path`, or stdout for "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::optional<std::string> optional_file(const std::string& path) {
  if (path.empty() || !fs::exists(path)) return std::nullopt;
  return path;
}

/// Shared knobs for everything that runs the sentence parser.
struct ParserOptions {
  std::string vocab = data_file("bundles.jsonl");
  std::string gazetteer = data_file("gazetteer.txt");
  double near_m = 100.0;

  void attach(CLI::App* app) {
    app->add_option("--vocab", vocab, "Tag bundle vocabulary (JSON lines)")->capture_default_str();
    app->add_option("--gazetteer", gazetteer, "Area names the parser recognises, one per line")
        ->capture_default_str();
    app->add_option("--near", near_m, "Distance in metres for near / next to / beside")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
};

/// Keeps the vocabulary alive for translators that point into it.
struct ParserBundle {
  spot::Vocabulary vocabulary;
  spot::ParserConfig config;
};

std::unique_ptr<ParserBundle> load_parser(const ParserOptions& o) {
  auto b = std::make_unique<ParserBundle>();
  b->vocabulary = spot::Vocabulary::load(o.vocab);
  b->config.vocabulary = &b->vocabulary;
  b->config.gazetteer = spot::read_name_list(o.gazetteer);
  b->config.default_near_distance_m = o.near_m;
  return b;
}

// ---- ingest ---------------------------------------------------------------

struct IngestCmd {
  std::string input;
  std::string whitelist = data_file("whitelist.txt");
  std::string out;
  bool stats = false;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("ingest", "Parse an .osm extract, filter tags and write a snapshot");
    c->add_option("--input,-i", input, "OSM XML file")->required();
    c->add_option("--whitelist", whitelist, "Tag whitelist")->capture_default_str();
    c->add_option("--output,--out,-o", out, "Snapshot file to write")->required();
    c->add_flag("--stats", stats, "Print ingest statistics");
    c->callback([this] { run(); });
  }

  void run() const {
    const auto wl = spot::TagWhitelist::load(whitelist);
    std::ifstream in(input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + input);
    const auto result = spot::ingest_osm(in, wl);
    spot::write_snapshot_file(out, result.features);
    if (!stats) return;
    const auto& s = result.stats;
    std::cout << "elements_read: " << s.elements_read << "\n"
              << "features_kept: " << s.features_kept << "\n"
              << "features_dropped: " << s.features_dropped << "\n"
              << "geometry_dropped: " << s.geometry_dropped << "\n"
              << "tag_bytes_before: " << s.tag_bytes_before << "\n"
              << "tag_bytes_after: " << s.tag_bytes_after << "\n"
              << "tag_bytes_removed: " << s.tag_bytes_removed() << "\n"
              << "reduction_ratio: " << spot::format_number(s.reduction_ratio()) << "\n";
  }
};

// ---- cooccur --------------------------------------------------------------

struct CooccurCmd {
  std::string snapshot;
  std::string vocab = data_file("bundles.jsonl");
  std::uint64_t min_count = spot::kDefaultMinCount;
  std::size_t top_k = spot::kDefaultTopK;
  std::string out = "-";

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("cooccur", "Mine companion tags per bundle from a snapshot");
    c->add_option("--snapshot,-s", snapshot, "Snapshot file")->required();
    c->add_option("--vocab", vocab, "Tag bundle vocabulary")->capture_default_str();
    c->add_option("--min-count", min_count, "Minimum co-occurrence count")->capture_default_str();
    c->add_option("--top-k", top_k, "Companions kept per bundle")->capture_default_str();
    c->add_option("--out,-o", out, "Output file, - for stdout")->capture_default_str();
    c->callback([this] { run(); });
  }

  void run() const {
    const auto features = spot::read_snapshot_file(snapshot);
    const auto v = spot::Vocabulary::load(vocab);
    const auto entries = spot::mine_cooccurrence(features, v, min_count, top_k);
    with_output(out, [&](std::ostream& os) { spot::write_cooccurrence(os, entries); });
  }
};

// ---- search ---------------------------------------------------------------

/// One line per spot: `<span_m> <node>=<uid> ...`. Members precede their
/// spot's center in the collection.
void print_uids(const nlohmann::ordered_json& spots) {
  std::string line;
  for (const auto& f : spots["features"]) {
    const auto& p = f["properties"];
    if (p.value("role", "") == "spot_center") {
      std::cout << spot::format_number(p["span_m"].get<double>()) << line << "\n";
      line.clear();
    } else {
      line += " " + std::to_string(p["node_id"].get<int>()) + "=" + f["id"].get<std::string>();
    }
  }
}

struct SearchCmd {
  std::string snapshot;
  std::string areas = data_file("areas.jsonl");
  std::string translator = "baseline";
  std::string sentence;
  std::string imr_file;
  std::vector<double> bbox;
  std::size_t limit = spot::kDefaultLimit;
  std::string format = "geojson";
  ParserOptions parser;
  int* exit_code = nullptr;

  void attach(CLI::App& root, int* code) {
    exit_code = code;
    auto* c = root.add_subcommand("search", "Run one query against a snapshot and print the response JSON");
    c->add_option("--snapshot,-s", snapshot, "Snapshot file")->required();
    c->add_option("--areas", areas, "Named area polygons (used when present)")->capture_default_str();
    c->add_option("--translator", translator, "baseline | endpoint:URL | mock:FILE")->capture_default_str();
    auto* s = c->add_option("--sentence", sentence, "Natural-language request");
    auto* q = c->add_option("--imr", imr_file, "IMR document, - for stdin");
    s->excludes(q);
    c->add_option("--bbox", bbox, "min_lon,min_lat,max_lon,max_lat")->expected(4)->delimiter(',');
    c->add_option("--limit", limit, "Maximum number of spots")->capture_default_str()->check(
        CLI::Range(std::size_t{1}, spot::kMaxLimit));
    c->add_option("--format", format, "geojson | uids | sql | json (full API response)")
        ->capture_default_str()
        ->check(CLI::IsMember({"geojson", "uids", "sql", "json"}));
    parser.attach(c);
    c->callback([this] { run(); });
  }

  void run() const {
    if (format == "sql") {
      if (imr_file.empty()) throw UsageError("--format sql needs --imr");
      std::cout << spot::emit_sql(spot::decode(read_text(imr_file))) << "\n";
      return;
    }
    if (sentence.empty() == imr_file.empty()) throw UsageError("give exactly one of --sentence or --imr");
    std::vector<spot::AreaGeometry> area_file;
    if (auto a = optional_file(areas)) area_file = spot::read_area_file(*a);
    auto store = std::make_shared<const spot::FeatureStore>(spot::read_snapshot_file(snapshot), std::move(area_file));
    auto p = load_parser(parser);
    const spot::Service service(store, spot::make_translator(translator, p->config));

    nlohmann::json request = nlohmann::json::object();
    if (!sentence.empty()) {
      request["sentence"] = sentence;
    } else {
      const auto text = read_text(imr_file);
      auto doc = nlohmann::json::parse(text, nullptr, false);
      if (doc.is_discarded()) throw std::runtime_error(imr_file + " is not JSON");
      request["imr"] = std::move(doc);
    }
    if (!bbox.empty()) request["bbox"] = bbox;
    request["limit"] = limit;

    const auto response = service.search(request.dump());
    auto out = nlohmann::ordered_json::parse(response.body);
    if (response.status != 200 || format == "json") {
      std::cout << out.dump(2) << "\n";
    } else if (format == "geojson") {
      std::cout << out["spots"].dump(2) << "\n";
    } else {
      print_uids(out["spots"]);
    }
    *exit_code = response.status < 400 ? kExitOk : response.status < 500 ? kExitUser : kExitInternal;
  }
};

// ---- translate ------------------------------------------------------------

struct TranslateCmd {
  std::string sentence;
  std::string translator = "baseline";
  ParserOptions parser;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("translate", "Translate a sentence and print the canonical IMR");
    c->add_option("--sentence", sentence, "Natural-language request")->required();
    c->add_option("--translator", translator, "baseline | endpoint:URL | mock:FILE")->capture_default_str();
    parser.attach(c);
    c->callback([this] { run(); });
  }

  void run() const {
    auto p = load_parser(parser);
    const auto t = spot::make_translator(translator, p->config);
    std::cout << spot::encode(spot::canonicalize(t->translate(sentence))) << "\n";
  }
};

// ---- datagen --------------------------------------------------------------

struct DatagenCmd {
  std::size_t n = 100;
  spot::GenConfig config;
  std::string mode = "template";
  std::string llm_endpoint;
  std::size_t parallel = 4;
  std::string cooccurrence;
  std::string vocab = data_file("bundles.jsonl");
  std::string gazetteer = data_file("gazetteer.txt");
  std::string out = "-";

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("datagen", "Generate a synthetic (sentence, IMR) dataset");
    c->add_option("--n", n, "Number of records")->required()->check(CLI::PositiveNumber);
    c->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    c->add_option("--mode", mode, "template | llm")->capture_default_str()->check(CLI::IsMember({"template", "llm"}));
    c->add_option("--llm-endpoint", llm_endpoint, "Sentence endpoint for llm mode (http://...)");
    c->add_option("--parallel", parallel, "Concurrent LLM requests")->capture_default_str()->check(
        CLI::PositiveNumber);
    c->add_option("--cooccurrence", cooccurrence, "Companion tags from `spot cooccur`");
    c->add_option("--vocab", vocab, "Tag bundle vocabulary")->capture_default_str();
    c->add_option("--gazetteer", gazetteer, "Area names to draw from")->capture_default_str();
    c->add_option("--max-objects", config.max_objects)->capture_default_str();
    c->add_option("--p-companion", config.p_companion)->capture_default_str();
    c->add_option("--max-companions", config.max_companions)->capture_default_str();
    c->add_option("--p-edge", config.p_edge)->capture_default_str();
    c->add_option("--p-named-area", config.p_named_area)->capture_default_str();
    c->add_option("--min-distance", config.min_distance_m)->capture_default_str();
    c->add_option("--max-distance", config.max_distance_m)->capture_default_str();
    c->add_option("--out,-o", out, "Output file, - for stdout")->capture_default_str();
    c->callback([this] { run(); });
  }

  void run() const {
    try {
      config.check();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (mode == "llm" && llm_endpoint.empty()) throw UsageError("--mode llm needs --llm-endpoint");
    const auto v = spot::Vocabulary::load(vocab);
    std::vector<spot::CooccurrenceEntry> co;
    if (!cooccurrence.empty()) co = spot::read_cooccurrence_file(cooccurrence);
    const auto names = spot::read_name_list(gazetteer);
    const spot::DatagenInputs inputs{&v, co, names};

    std::unique_ptr<spot::SentenceWriter> writer;
    if (mode == "llm") writer = std::make_unique<spot::HttpSentenceWriter>(spot::HttpEndpoint::parse(llm_endpoint));
    const auto records = spot::generate_dataset(n, config, inputs, writer.get(), parallel);
    with_output(out, [&](std::ostream& os) { spot::write_dataset(os, records); });
  }
};

// ---- eval -----------------------------------------------------------------

struct EvalCmd {
  std::string dataset;
  std::string translator = "baseline";
  std::string report = "-";
  std::size_t threads = 1;
  ParserOptions parser;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("eval", "Score a translator against a dataset");
    c->add_option("--dataset,-d", dataset, "Dataset from `spot datagen`")->required();
    c->add_option("--translator", translator, "baseline | endpoint:URL | mock:FILE")->capture_default_str();
    c->add_option("--report,-r", report, "Report file, - for stdout")->capture_default_str();
    c->add_option("--threads", threads, "Concurrent translations")->capture_default_str()->check(CLI::PositiveNumber);
    parser.attach(c);
    c->callback([this] { run(); });
  }

  void run() const {
    const auto records = spot::read_dataset_file(dataset);
    auto p = load_parser(parser);
    const auto t = spot::make_translator(translator, p->config);
    const auto r = spot::evaluate(*t, records, threads);
    with_output(report, [&](std::ostream& os) { os << spot::report_to_json(r).dump(2) << "\n"; });
    std::cerr << "records " << r.n_total << ", format valid " << spot::format_number(r.format_validity_rate)
              << ", mean overall " << spot::format_number(r.mean_overall) << ", exact "
              << spot::format_number(r.exact_match_rate) << "\n";
  }
};

// ---- serve ----------------------------------------------------------------

struct ServeCmd {
  std::string config_path;
  std::string snapshot;
  std::string vocab;
  std::string areas;
  std::string gazetteer;
  std::string translator;
  std::string host;
  int port = -1;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("serve", "Start the HTTP API");
    c->add_option("--config", config_path, "JSON config file");
    c->add_option("--snapshot", snapshot, "Snapshot file");
    c->add_option("--vocab", vocab, "Tag bundle vocabulary");
    c->add_option("--areas", areas, "Named area polygons");
    c->add_option("--gazetteer", gazetteer, "Area names the parser recognises");
    c->add_option("--translator", translator, "baseline | endpoint:URL | mock:FILE");
    c->add_option("--host", host, "Listen address");
    c->add_option("--port", port, "Listen port");
    c->callback([this] { run(); });
  }

  void run() const {
    spot::ServiceConfig cfg;
    cfg.vocabulary_path = data_file("bundles.jsonl");
    if (auto a = optional_file(data_file("areas.jsonl"))) cfg.area_file = a;
    if (!config_path.empty()) cfg = spot::ServiceConfig::load(config_path);
    cfg.apply_process_env();
    if (!snapshot.empty()) cfg.snapshot_path = snapshot;
    if (!vocab.empty()) cfg.vocabulary_path = vocab;
    if (!areas.empty()) cfg.area_file = areas;
    if (!gazetteer.empty()) cfg.gazetteer_file = gazetteer;
    if (!translator.empty()) cfg.translator = translator;
    if (!host.empty()) cfg.host = host;
    if (port >= 0) cfg.port = port;

    const auto service = spot::Service::from_config(cfg);
    spot::HttpServer server(service, {cfg.host, cfg.port, cfg.cors_origin, cfg.request_timeout});
    const int bound = server.bind();
    std::cerr << "spot: serving " << service.store().features().size() << " features on http://" << cfg.host << ":"
              << bound << "\n";
    server.listen();
  }
};

// ---- emit-sql -------------------------------------------------------------

struct EmitSqlCmd {
  std::string imr_file;

  void attach(CLI::App& root) {
    auto* c = root.add_subcommand("emit-sql", "Print the PostGIS SQL for an IMR document");
    c->add_option("--imr", imr_file, "IMR document, - for stdin")->required();
    c->callback([this] { run(); });
  }

  void run() const { std::cout << spot::emit_sql(spot::decode(read_text(imr_file))) << "\n"; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spot: natural-language search for spots in OpenStreetMap data"};
  app.require_subcommand(1);
  app.fallthrough(false);

  int exit_code = kExitOk;
  IngestCmd ingest;
  CooccurCmd cooccur;
  SearchCmd search;
  TranslateCmd translate;
  DatagenCmd datagen;
  EvalCmd eval;
  ServeCmd serve;
  EmitSqlCmd emit_sql;
  ingest.attach(app);
  cooccur.attach(app);
  search.attach(app, &exit_code);
  translate.attach(app);
  datagen.attach(app);
  eval.attach(app);
  serve.attach(app);
  emit_sql.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << "\n" << app.help();
    return e.get_exit_code() == 0 ? kExitOk : kExitUser;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const spot::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return exit_code;
}
