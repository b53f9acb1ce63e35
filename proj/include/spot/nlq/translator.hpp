#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "spot/error.hpp"
#include "spot/imr/imr.hpp"
#include "spot/nlq/baseline_parser.hpp"
#include "spot/nlq/http_client.hpp"

namespace spot {

/// The model answered, but not with a valid IMR document.
class FormatInvalid : public Error {
 public:
  explicit FormatInvalid(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }
  std::string_view code() const noexcept override { return "FormatInvalid"; }

 private:
  std::vector<std::string> errors_;
};

/// Sentence -> IMR. Whatever translate() returns passes validate; failures
/// are thrown as spot::Error subclasses.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string name() const = 0;
  virtual ImrQuery translate(std::string_view sentence) const = 0;
};

class BaselineTranslator final : public Translator {
 public:
  explicit BaselineTranslator(ParserConfig config) : config_(std::move(config)) {}
  std::string name() const override { return "baseline"; }
  ImrQuery translate(std::string_view sentence) const override;

 private:
  ParserConfig config_;
};

class HttpTranslator final : public Translator {
 public:
  explicit HttpTranslator(HttpEndpoint endpoint, std::chrono::milliseconds timeout = kDefaultHttpTimeout)
      : endpoint_(std::move(endpoint)), timeout_(timeout) {}
  std::string name() const override { return "endpoint:" + endpoint_.url(); }
  ImrQuery translate(std::string_view sentence) const override;

 private:
  HttpEndpoint endpoint_;
  std::chrono::milliseconds timeout_;
};

/// Fixture table: JSON lines `{"sentence": "...", "imr": {...}}`. The stored
/// document goes through the same validation as an endpoint reply, so a
/// fixture can simulate a malformed model answer. Unknown sentences throw
/// TransportError.
class MockTranslator final : public Translator {
 public:
  static MockTranslator parse(std::istream& in);
  static MockTranslator load(const std::string& path);
  void add(std::string sentence, nlohmann::json imr);

  std::string name() const override { return "mock"; }
  ImrQuery translate(std::string_view sentence) const override;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, nlohmann::json, std::less<>> table_;
};

/// Validates a model answer; FormatInvalid carries the validator's errors.
ImrQuery accept_model_output(const nlohmann::json& document);

}  // namespace spot
