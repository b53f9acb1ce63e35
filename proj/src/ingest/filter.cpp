#include <fstream>
#include <sstream>

#include "spot/ingest/ingest.hpp"

namespace spot {

double IngestStats::reduction_ratio() const noexcept {
  if (tag_bytes_before == 0) return 0.0;
  return 1.0 - static_cast<double>(tag_bytes_after) / static_cast<double>(tag_bytes_before);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

TagWhitelist TagWhitelist::from_patterns(const std::vector<std::string>& patterns) {
  TagWhitelist wl;
  for (const auto& raw : patterns) {
    const std::string pattern = trim(raw);
    const auto eq = pattern.find('=');
    if (eq == std::string::npos) {
      if (pattern.empty()) throw WhitelistError("empty whitelist pattern");
      wl.keys_.insert(pattern);
      continue;
    }
    std::string key = pattern.substr(0, eq);
    std::string value = pattern.substr(eq + 1);
    if (key.empty() || value.empty() || value.find('=') != std::string::npos) {
      throw WhitelistError("malformed whitelist pattern '" + pattern + "'");
    }
    wl.pairs_.emplace(std::move(key), std::move(value));
  }
  if (wl.size() == 0) throw WhitelistError("whitelist is empty");
  return wl;
}

TagWhitelist TagWhitelist::parse(std::istream& in) {
  std::vector<std::string> patterns;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    patterns.push_back(std::move(t));
  }
  return from_patterns(patterns);
}

TagWhitelist TagWhitelist::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WhitelistError("cannot open whitelist " + path);
  return parse(in);
}

bool TagWhitelist::matches(std::string_view key, std::string_view value) const {
  if (keys_.find(key) != keys_.end()) return true;
  return pairs_.find(std::pair{std::string(key), std::string(value)}) != pairs_.end();
}

std::uint64_t tag_bytes(const TagMap& tags) noexcept {
  std::uint64_t n = 0;
  for (const auto& [k, v] : tags) n += k.size() + 1 + v.size();
  return n;
}

std::optional<Feature> filter_tags(Feature feature, const TagWhitelist& whitelist, IngestStats& stats) {
  stats.tag_bytes_before += tag_bytes(feature.tags);
  std::erase_if(feature.tags, [&](const auto& kv) { return !whitelist.matches(kv.first, kv.second); });
  if (feature.tags.empty()) {
    ++stats.features_dropped;
    return std::nullopt;
  }
  stats.tag_bytes_after += tag_bytes(feature.tags);
  ++stats.features_kept;
  return feature;
}

IngestResult ingest_osm(std::istream& in, const TagWhitelist& whitelist) {
  IngestResult result;
  const auto elements = parse_osm_xml(in);
  auto features = assemble_features(elements, result.stats);
  result.features.reserve(features.size());
  for (auto& f : features) {
    if (auto kept = filter_tags(std::move(f), whitelist, result.stats)) {
      result.features.push_back(std::move(*kept));
    }
  }
  return result;
}

}  // namespace spot
