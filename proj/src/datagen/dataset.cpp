#include "spot/datagen/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "spot/datagen/prompt.hpp"
#include "spot/datagen/template_sentence.hpp"
#include "spot/error.hpp"
#include "spot/imr/codec.hpp"
#include "spot/imr/validate.hpp"

namespace spot {

namespace {

std::string record_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "q-%06zu", index + 1);
  return buf;
}

std::string describe_failure(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(err->code()) + ": " + err->what();
  return e.what();
}

}  // namespace

nlohmann::ordered_json record_to_json(const DatasetRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["imr"] = to_json(record.imr);
  j["prompt"] = record.prompt;
  j["style"] = record.style;
  if (record.sentence) j["sentence"] = *record.sentence;
  if (record.error) j["error"] = *record.error;
  return j;
}

DatasetRecord record_from_json(const nlohmann::json& document) {
  if (!document.is_object()) throw std::runtime_error("dataset record must be an object");
  const auto text = [&](const char* key, bool required) -> std::optional<std::string> {
    auto it = document.find(key);
    if (it == document.end()) {
      if (required) throw std::runtime_error(std::string("dataset record lacks \"") + key + "\"");
      return std::nullopt;
    }
    if (!it->is_string()) throw std::runtime_error(std::string("dataset field \"") + key + "\" must be a string");
    return it->get<std::string>();
  };
  DatasetRecord r;
  r.id = *text("id", true);
  if (!document.contains("imr")) throw std::runtime_error("dataset record " + r.id + " lacks \"imr\"");
  r.imr = from_json(document["imr"]);
  r.prompt = text("prompt", false).value_or("");
  r.style = text("style", false).value_or("");
  r.sentence = text("sentence", false);
  r.error = text("error", false);
  return r;
}

void write_dataset(std::ostream& out, std::span<const DatasetRecord> records) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::vector<DatasetRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded()) throw std::runtime_error("dataset line " + std::to_string(line_no) + ": not JSON");
    try {
      records.push_back(record_from_json(doc));
    } catch (const std::exception& e) {
      throw std::runtime_error("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::vector<DatasetRecord> read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path);
  return read_dataset(in);
}

std::string HttpSentenceWriter::write(const std::string& prompt, const std::string& style) const {
  const auto reply = post_json(endpoint_, {{"prompt", prompt}, {"style", style}}, timeout_);
  if (!reply.is_object() || !reply.contains("sentence") || !reply["sentence"].is_string()) {
    throw TransportError("sentence endpoint reply lacks a \"sentence\" string");
  }
  return reply["sentence"].get<std::string>();
}

std::vector<DatasetRecord> generate_dataset(std::size_t n, const GenConfig& config, const DatagenInputs& inputs,
                                            const SentenceWriter* writer, std::size_t parallelism) {
  if (!inputs.vocabulary) throw std::invalid_argument("generate_dataset needs a vocabulary");
  Rng rng(config.seed);
  const auto styles = prompt_styles();

  std::vector<DatasetRecord> records(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = records[i];
    r.id = record_id(i);
    r.imr = sample_imr(rng, *inputs.vocabulary, inputs.cooccurrence, inputs.gazetteer, config);
    r.style = std::string(styles[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(styles.size()) - 1))]);
    r.prompt = render_prompt(r.imr, r.style);
  }

  const auto fill = [&](DatasetRecord& r) {
    try {
      r.sentence = writer ? writer->write(r.prompt, r.style) : render_template_sentence(r.imr, *inputs.vocabulary);
    } catch (const std::exception& e) {
      r.error = describe_failure(e);
    }
  };

  if (!writer || parallelism <= 1 || n <= 1) {
    for (auto& r : records) fill(r);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (std::size_t t = 0; t < std::min(parallelism, n); ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fill(records[i]);
    });
  }
  workers.clear();
  return records;
}

}  // namespace spot
