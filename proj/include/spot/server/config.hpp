#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spot/engine/search.hpp"
#include "spot/error.hpp"

namespace spot {

class ConfigError : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "ConfigError"; }
};

inline constexpr std::size_t kMaxSentenceChars = 1000;

struct ServiceConfig {
  std::string snapshot_path;
  std::string vocabulary_path;
  std::optional<std::string> area_file;
  std::optional<std::string> gazetteer_file;  // default: every resolvable area name
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string translator = "baseline";  // baseline | endpoint:URL | mock:FILE
  std::size_t max_limit = kMaxLimit;
  std::chrono::milliseconds request_timeout{10'000};
  std::size_t max_sentence_chars = kMaxSentenceChars;
  double near_distance_m = 100.0;
  std::string cors_origin = "*";

  /// Keys mirror the field names (`request_timeout_ms` for the timeout).
  /// Relative paths are resolved against `base_dir`. Unknown keys throw.
  static ServiceConfig from_json(const nlohmann::json& document, const std::string& base_dir = "");
  static ServiceConfig load(const std::string& path);

  /// SPOT_SNAPSHOT, SPOT_PORT and SPOT_VOCAB override the file.
  void apply_env(const std::function<std::optional<std::string>(const char*)>& getenv);
  void apply_process_env();

  /// Paths exist, port in 1..65535, limits positive. Throws ConfigError.
  void check() const;
};

/// Non-empty, non-comment lines, trimmed.
std::vector<std::string> read_name_list(const std::string& path);

}  // namespace spot
