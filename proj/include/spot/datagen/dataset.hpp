#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spot/datagen/sampler.hpp"
#include "spot/imr/imr.hpp"
#include "spot/nlq/http_client.hpp"

namespace spot {

struct DatasetRecord {
  std::string id;  // "q-000001"
  ImrQuery imr;
  std::string prompt;
  std::string style;
  std::optional<std::string> sentence;
  std::optional<std::string> error;  // why sentence is absent
};

nlohmann::ordered_json record_to_json(const DatasetRecord& record);
/// Throws std::runtime_error on a malformed record; the IMR must validate.
DatasetRecord record_from_json(const nlohmann::json& document);

void write_dataset(std::ostream& out, std::span<const DatasetRecord> records);
std::vector<DatasetRecord> read_dataset(std::istream& in);
std::vector<DatasetRecord> read_dataset_file(const std::string& path);

/// The LLM slot: turns a prompt into a sentence.
class SentenceWriter {
 public:
  virtual ~SentenceWriter() = default;
  virtual std::string write(const std::string& prompt, const std::string& style) const = 0;
};

/// POSTs `{"prompt","style"}` and expects `{"sentence": "..."}` back.
class HttpSentenceWriter final : public SentenceWriter {
 public:
  explicit HttpSentenceWriter(HttpEndpoint endpoint, std::chrono::milliseconds timeout = kDefaultHttpTimeout)
      : endpoint_(std::move(endpoint)), timeout_(timeout) {}
  std::string write(const std::string& prompt, const std::string& style) const override;

 private:
  HttpEndpoint endpoint_;
  std::chrono::milliseconds timeout_;
};

struct DatagenInputs {
  const Vocabulary* vocabulary = nullptr;
  std::span<const CooccurrenceEntry> cooccurrence;
  std::span<const std::string> gazetteer;
};

/// n records from one seeded Rng: per record sample_imr, then a uniform style.
/// Without a writer sentences come from render_template_sentence; with one,
/// up to `parallelism` prompts are in flight and output order stays by index.
/// A sentence that cannot be produced leaves `sentence` empty and sets
/// `error`; nothing is retried.
std::vector<DatasetRecord> generate_dataset(std::size_t n, const GenConfig& config, const DatagenInputs& inputs,
                                            const SentenceWriter* writer = nullptr, std::size_t parallelism = 1);

}  // namespace spot
