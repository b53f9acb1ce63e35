#include "spot/vocab/cooccurrence.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace spot {

std::vector<CooccurrenceEntry> mine_cooccurrence(std::span<const Feature> features, const Vocabulary& vocabulary,
                                                 std::uint64_t min_count, std::size_t top_k) {
  if (min_count < 1 || top_k < 1) throw std::invalid_argument("min_count and top_k must be >= 1");
  std::vector<CooccurrenceEntry> out;
  for (const auto& bundle : vocabulary.bundles()) {
    std::uint64_t matched = 0;
    std::map<Tag, std::uint64_t> counts;
    for (const auto& f : features) {
      if (!bundle.matches(f.tags)) continue;
      ++matched;
      for (const auto& [k, v] : f.tags) {
        Tag t{k, v};
        if (!bundle.has_tag(t)) ++counts[t];
      }
    }
    std::vector<CooccurrenceEntry> entries;
    for (const auto& [tag, count] : counts) {
      if (count < min_count) continue;
      entries.push_back({bundle.id, tag, count, static_cast<double>(count) / static_cast<double>(matched)});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      if (a.count != b.count) return a.count > b.count;
      return a.companion.str() < b.companion.str();
    });
    if (entries.size() > top_k) entries.resize(top_k);
    out.insert(out.end(), entries.begin(), entries.end());
  }
  return out;
}

void write_cooccurrence(std::ostream& out, std::span<const CooccurrenceEntry> entries) {
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["bundle"] = e.bundle_id;
    j["companion"] = e.companion.str();
    j["count"] = e.count;
    j["freq"] = e.freq;
    out << j.dump() << '\n';
  }
}

std::vector<CooccurrenceEntry> read_cooccurrence(std::istream& in) {
  std::vector<CooccurrenceEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      auto tag = Tag::parse(j.at("companion").get<std::string>());
      if (!tag) throw std::invalid_argument("companion is not key=value");
      out.push_back({j.at("bundle").get<std::string>(), std::move(*tag), j.at("count").get<std::uint64_t>(),
                     j.at("freq").get<double>()});
    } catch (const std::exception& e) {
      throw VocabularyError("co-occurrence line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CooccurrenceEntry> read_cooccurrence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VocabularyError("cannot open co-occurrence file " + path);
  return read_cooccurrence(in);
}

}  // namespace spot
