#include "spot/server/service.hpp"

#include <chrono>
#include <cmath>
#include <optional>

#include "spot/engine/output.hpp"
#include "spot/geo/area.hpp"
#include "spot/imr/canonical.hpp"
#include "spot/imr/codec.hpp"
#include "spot/imr/validate.hpp"
#include "spot/ingest/snapshot.hpp"
#include "spot/nlq/baseline_parser.hpp"

namespace spot {

namespace {

using ojson = nlohmann::ordered_json;

HttpResponse error_response(int status, std::string_view code, std::string_view message,
                            const std::vector<std::string>* details = nullptr) {
  ojson body;
  body["code"] = code;
  body["message"] = message;
  if (details) body["details"] = *details;
  return {status, body.dump()};
}

HttpResponse bad_request(std::string_view message) { return error_response(400, "InvalidBody", message); }

/// Maps a failure during translation or search to its HTTP response.
HttpResponse failure_response() {
  try {
    throw;
  } catch (const NoObjectsFound& e) {
    return error_response(400, e.code(), e.what());
  } catch (const ImrInvalid& e) {
    return error_response(400, e.code(), e.what(), &e.errors());
  } catch (const AreaNotFound& e) {
    return error_response(404, e.code(), e.what());
  } catch (const AreaRequired& e) {
    return error_response(422, e.code(), e.what());
  } catch (const FormatInvalid& e) {
    return error_response(502, "TranslatorFormatInvalid", e.what(), &e.errors());
  } catch (const TransportError& e) {
    return error_response(502, "TranslatorUnavailable", e.what());
  } catch (const TranslatorTimeout& e) {
    return error_response(502, "TranslatorUnavailable", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  } catch (...) {
    return error_response(500, "Internal", "unknown failure");
  }
}

std::optional<nlohmann::json> parse_object(std::string_view body) {
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  return doc;
}

}  // namespace

std::size_t utf8_length(std::string_view text) noexcept {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

Service::Service(std::shared_ptr<const FeatureStore> store, std::shared_ptr<const Translator> translator,
                 ServiceLimits limits)
    : store_(std::move(store)), translator_(std::move(translator)), limits_(limits) {}

std::shared_ptr<const Translator> make_translator(const std::string& selection, const ParserConfig& parser,
                                                  std::chrono::milliseconds timeout) {
  if (selection == "baseline") return std::make_shared<BaselineTranslator>(parser);
  if (selection.starts_with("mock:")) return std::make_shared<MockTranslator>(MockTranslator::load(selection.substr(5)));
  std::string url = selection;
  if (url.starts_with("endpoint:")) url = url.substr(9);
  if (url.starts_with("http://")) return std::make_shared<HttpTranslator>(HttpEndpoint::parse(url), timeout);
  throw ConfigError("unknown translator '" + selection + "' (baseline, endpoint:URL or mock:FILE)");
}

Service Service::from_config(const ServiceConfig& config) {
  config.check();
  std::vector<AreaGeometry> area_file;
  if (config.area_file) area_file = read_area_file(*config.area_file);
  auto store = std::make_shared<const FeatureStore>(read_snapshot_file(config.snapshot_path), std::move(area_file));

  // The vocabulary must outlive the parser config that points at it.
  auto vocabulary = std::make_shared<const Vocabulary>(Vocabulary::load(config.vocabulary_path));
  ParserConfig parser;
  parser.vocabulary = vocabulary.get();
  parser.gazetteer = config.gazetteer_file ? read_name_list(*config.gazetteer_file) : store->areas().names();
  parser.default_near_distance_m = config.near_distance_m;
  auto inner = make_translator(config.translator, parser, config.request_timeout);

  struct Owning final : Translator {
    std::shared_ptr<const Vocabulary> vocabulary;
    std::shared_ptr<const Translator> inner;
    std::string name() const override { return inner->name(); }
    ImrQuery translate(std::string_view s) const override { return inner->translate(s); }
  };
  auto owning = std::make_shared<Owning>();
  owning->vocabulary = std::move(vocabulary);
  owning->inner = std::move(inner);
  return Service(std::move(store), std::move(owning), {config.max_limit, config.max_sentence_chars});
}

HttpResponse Service::search(std::string_view body) const {
  const auto started = std::chrono::steady_clock::now();
  auto doc = parse_object(body);
  if (!doc) return bad_request("request body must be a JSON object");

  const bool has_sentence = doc->contains("sentence");
  const bool has_imr = doc->contains("imr");
  if (has_sentence == has_imr) return bad_request("give exactly one of \"sentence\" or \"imr\"");

  SearchParams params;
  if (auto it = doc->find("limit"); it != doc->end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1 ||
        it->get<std::int64_t>() > static_cast<std::int64_t>(limits_.max_limit)) {
      return bad_request("\"limit\" must be an integer in [1, " + std::to_string(limits_.max_limit) + "]");
    }
    params.limit = it->get<std::size_t>();
  }
  params.limit = std::min(params.limit, limits_.max_limit);
  if (auto it = doc->find("bbox"); it != doc->end() && !it->is_null()) {
    bool ok = it->is_array() && it->size() == 4;
    for (std::size_t i = 0; ok && i < 4; ++i) ok = (*it)[i].is_number() && std::isfinite((*it)[i].get<double>());
    if (ok) {
      const BBox box{(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>(), (*it)[3].get<double>()};
      ok = box.valid();
      if (ok) params.bbox = box;
    }
    if (!ok) return bad_request("\"bbox\" must be [min_lon, min_lat, max_lon, max_lat] with min <= max");
  }

  ImrQuery query;
  try {
    if (has_sentence) {
      const auto& s = (*doc)["sentence"];
      if (!s.is_string() || s.get<std::string>().empty()) return bad_request("\"sentence\" must be a non-empty string");
      if (utf8_length(s.get<std::string>()) > limits_.max_sentence_chars) {
        return error_response(400, "SentenceTooLong",
                              "sentence exceeds " + std::to_string(limits_.max_sentence_chars) + " characters");
      }
      query = translator_->translate(s.get<std::string>());
    } else {
      query = from_json((*doc)["imr"]);
    }
    query = canonicalize(query);

    SearchStats stats;
    const auto matches = spot::search(query, *store_, params, &stats);

    ojson out;
    out["imr"] = to_json(query);
    out["spots"] = spots_to_geojson(matches, *store_, query);
    ojson candidates = ojson::object();
    for (std::size_t i = 0; i < query.nodes.size(); ++i) {
      candidates[std::to_string(query.nodes[i].id)] = i < stats.candidates.size() ? stats.candidates[i] : 0;
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    out["stats"] = {{"candidates", candidates},
                    {"examinedPairs", stats.examined_pairs},
                    {"elapsedMs", std::round(elapsed * 1000.0) / 1000.0}};
    return {200, out.dump()};
  } catch (...) {
    return failure_response();
  }
}

HttpResponse Service::translate(std::string_view body) const {
  auto doc = parse_object(body);
  if (!doc || !doc->contains("sentence")) return bad_request("request body must be {\"sentence\": \"...\"}");
  const auto& s = (*doc)["sentence"];
  if (!s.is_string() || s.get<std::string>().empty()) return bad_request("\"sentence\" must be a non-empty string");
  if (utf8_length(s.get<std::string>()) > limits_.max_sentence_chars) {
    return error_response(400, "SentenceTooLong",
                          "sentence exceeds " + std::to_string(limits_.max_sentence_chars) + " characters");
  }
  try {
    return {200, to_json(canonicalize(translator_->translate(s.get<std::string>()))).dump()};
  } catch (...) {
    return failure_response();
  }
}

HttpResponse Service::areas(std::string_view prefix) const {
  ojson names = ojson::array();
  for (auto& n : store_->areas().suggest(prefix, 20)) names.push_back(std::move(n));
  return {200, names.dump()};
}

HttpResponse Service::health() const {
  ojson out;
  out["status"] = "ok";
  out["features"] = store_->features().size();
  return {200, out.dump()};
}

}  // namespace spot
