#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spot/engine/search.hpp"
#include "spot/nlq/translator.hpp"
#include "spot/server/config.hpp"
#include "spot/vocab/vocabulary.hpp"

namespace spot {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

struct ServiceLimits {
  std::size_t max_limit = kMaxLimit;
  std::size_t max_sentence_chars = kMaxSentenceChars;
};

/// Request handling without any transport: each handler takes the raw request
/// body (or query value) and returns status plus JSON body. All state is
/// read-only after construction, so handlers may run concurrently.
///
/// Error bodies are `{"code": "...", "message": "...", "details": [...]}`,
/// `details` only for validator output. Status mapping: malformed body,
/// invalid IMR, NoObjectsFound and over-long sentences 400; unknown named
/// area 404; map-view query without bbox 422; translator unreachable or
/// answering garbage 502; anything else 500.
class Service {
 public:
  Service(std::shared_ptr<const FeatureStore> store, std::shared_ptr<const Translator> translator,
          ServiceLimits limits = {});

  /// Loads snapshot, vocabulary, areas and translator named by the config.
  static Service from_config(const ServiceConfig& config);

  HttpResponse search(std::string_view body) const;
  HttpResponse translate(std::string_view body) const;
  HttpResponse areas(std::string_view prefix) const;
  HttpResponse health() const;

  const FeatureStore& store() const noexcept { return *store_; }
  const Translator& translator() const noexcept { return *translator_; }

 private:
  std::shared_ptr<const FeatureStore> store_;
  std::shared_ptr<const Translator> translator_;
  ServiceLimits limits_;
};

/// Builds the translator named by a selection string (baseline | endpoint:URL
/// | http://URL | mock:FILE).
std::shared_ptr<const Translator> make_translator(const std::string& selection, const ParserConfig& parser,
                                                  std::chrono::milliseconds timeout = kDefaultHttpTimeout);

/// Unicode code points in a UTF-8 string (continuation bytes not counted).
std::size_t utf8_length(std::string_view text) noexcept;

}  // namespace spot
