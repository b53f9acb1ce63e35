#include "spot/server/config.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace spot {

namespace {

namespace fs = std::filesystem;

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

int parse_port(const std::string& text) {
  int port = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw ConfigError("port is not a number: " + text);
  return port;
}

template <typename T>
T get(const nlohmann::json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

ServiceConfig ServiceConfig::from_json(const nlohmann::json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ServiceConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "snapshot") {
      c.snapshot_path = resolve(base_dir, get<std::string>(doc, "snapshot"));
    } else if (key == "vocabulary") {
      c.vocabulary_path = resolve(base_dir, get<std::string>(doc, "vocabulary"));
    } else if (key == "area_file") {
      c.area_file = resolve(base_dir, get<std::string>(doc, "area_file"));
    } else if (key == "gazetteer_file") {
      c.gazetteer_file = resolve(base_dir, get<std::string>(doc, "gazetteer_file"));
    } else if (key == "host") {
      c.host = get<std::string>(doc, "host");
    } else if (key == "port") {
      c.port = get<int>(doc, "port");
    } else if (key == "translator") {
      c.translator = get<std::string>(doc, "translator");
      if (c.translator.starts_with("mock:")) c.translator = "mock:" + resolve(base_dir, c.translator.substr(5));
    } else if (key == "max_limit") {
      c.max_limit = get<std::size_t>(doc, "max_limit");
    } else if (key == "request_timeout_ms") {
      c.request_timeout = std::chrono::milliseconds(get<std::int64_t>(doc, "request_timeout_ms"));
    } else if (key == "max_sentence_chars") {
      c.max_sentence_chars = get<std::size_t>(doc, "max_sentence_chars");
    } else if (key == "near_distance_m") {
      c.near_distance_m = get<double>(doc, "near_distance_m");
    } else if (key == "cors_origin") {
      c.cors_origin = get<std::string>(doc, "cors_origin");
    } else {
      throw ConfigError("unknown config field \"" + key + "\"");
    }
  }
  return c;
}

ServiceConfig ServiceConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config " + path + " is not valid JSON");
  return from_json(doc, fs::path(path).parent_path().string());
}

void ServiceConfig::apply_env(const std::function<std::optional<std::string>(const char*)>& getenv) {
  if (auto v = getenv("SPOT_SNAPSHOT")) snapshot_path = *v;
  if (auto v = getenv("SPOT_VOCAB")) vocabulary_path = *v;
  if (auto v = getenv("SPOT_PORT")) port = parse_port(*v);
}

void ServiceConfig::apply_process_env() {
  apply_env([](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  });
}

void ServiceConfig::check() const {
  const auto must_exist = [](const std::string& what, const std::string& path) {
    if (path.empty()) throw ConfigError(what + " path is not set");
    if (!fs::is_regular_file(path)) throw ConfigError(what + " not found: " + path);
  };
  must_exist("snapshot", snapshot_path);
  must_exist("vocabulary", vocabulary_path);
  if (area_file) must_exist("area file", *area_file);
  if (gazetteer_file) must_exist("gazetteer", *gazetteer_file);
  if (translator.starts_with("mock:")) must_exist("mock translator fixture", translator.substr(5));
  if (port < 1 || port > 65535) throw ConfigError("port out of range: " + std::to_string(port));
  if (max_limit < 1) throw ConfigError("max_limit must be positive");
  if (request_timeout.count() <= 0) throw ConfigError("request_timeout_ms must be positive");
  if (max_sentence_chars < 1) throw ConfigError("max_sentence_chars must be positive");
  if (!(near_distance_m > 0.0)) throw ConfigError("near_distance_m must be positive");
}

std::vector<std::string> read_name_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    names.push_back(line.substr(b, e - b + 1));
  }
  return names;
}

}  // namespace spot
