#include "spot/vocab/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spot/text.hpp"

namespace spot {

std::optional<Tag> Tag::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size()) return std::nullopt;
  return Tag{std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

bool TagBundle::matches(const TagMap& feature_tags) const {
  return std::any_of(tags.begin(), tags.end(), [&](const Tag& t) {
    auto it = feature_tags.find(t.key);
    return it != feature_tags.end() && it->second == t.value;
  });
}

bool TagBundle::has_tag(const Tag& tag) const { return std::find(tags.begin(), tags.end(), tag) != tags.end(); }

std::vector<TagPredicate> bundle_predicates(const TagBundle& bundle) {
  std::map<std::string, std::vector<std::string>> by_key;
  for (const auto& t : bundle.tags) by_key[t.key].push_back(t.value);
  std::vector<TagPredicate> out;
  if (by_key.size() == 1) {
    auto& [key, values] = *by_key.begin();
    if (values.size() == 1) {
      out.push_back(TagPredicate::eq(key, values.front()));
    } else {
      std::sort(values.begin(), values.end());
      out.push_back(TagPredicate::one_of(key, values));
    }
    return out;
  }
  for (const auto& t : bundle.tags) out.push_back(TagPredicate::eq(t.key, t.value));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::string> split_words(std::string_view phrase) {
  std::vector<std::string> out;
  std::istringstream in{std::string(phrase)};
  std::string w;
  while (in >> w) out.push_back(std::move(w));
  return out;
}

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

Vocabulary Vocabulary::from_bundles(std::vector<TagBundle> bundles) {
  if (bundles.empty()) throw VocabularyError("vocabulary is empty");
  Vocabulary v;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    auto& b = bundles[i];
    if (b.id.empty()) throw VocabularyError("bundle with empty id");
    if (!v.by_id_.emplace(b.id, i).second) throw VocabularyError("duplicate bundle id '" + b.id + "'");
    if (b.tags.empty()) throw VocabularyError("bundle '" + b.id + "' has no tags");
    if (b.descriptors.empty()) throw VocabularyError("bundle '" + b.id + "' has no descriptors");
    for (auto& d : b.descriptors) {
      const auto words = split_words(d);
      if (words.empty()) throw VocabularyError("bundle '" + b.id + "' has an empty descriptor");
      if (ascii_lower(d) != d) throw VocabularyError("descriptor '" + d + "' is not lowercase");
      d = join(words);
      auto [it, inserted] = v.by_descriptor_.emplace(d, i);
      if (!inserted) {
        throw VocabularyError("descriptor '" + d + "' claimed by bundles '" + bundles[it->second].id + "' and '" +
                              b.id + "'");
      }
      v.max_phrase_tokens_ = std::max(v.max_phrase_tokens_, words.size());
    }
  }
  v.bundles_ = std::move(bundles);
  return v;
}

Vocabulary Vocabulary::parse(std::istream& in) {
  std::vector<TagBundle> bundles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "bundle file line " + std::to_string(line_no) + ": ";
    TagBundle b;
    try {
      const auto j = nlohmann::json::parse(line);
      b.id = j.at("id").get<std::string>();
      for (const auto& t : j.at("tags")) {
        auto tag = Tag::parse(t.get<std::string>());
        if (!tag) throw VocabularyError("tag '" + t.get<std::string>() + "' is not key=value");
        b.tags.push_back(std::move(*tag));
      }
      b.descriptors = j.at("descriptors").get<std::vector<std::string>>();
    } catch (const VocabularyError& e) {
      throw VocabularyError(where + e.what());
    } catch (const std::exception& e) {
      throw VocabularyError(where + e.what());
    }
    bundles.push_back(std::move(b));
  }
  return from_bundles(std::move(bundles));
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VocabularyError("cannot open bundle file " + path);
  return parse(in);
}

const TagBundle* Vocabulary::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &bundles_[it->second];
}

std::optional<std::size_t> Vocabulary::lookup(std::string_view descriptor) const {
  auto it = by_descriptor_.find(std::string(descriptor));
  if (it == by_descriptor_.end()) return std::nullopt;
  return it->second;
}

std::optional<DescriptorMatch> Vocabulary::match_descriptor(std::span<const std::string> tokens, std::size_t pos) const {
  if (pos >= tokens.size()) return std::nullopt;
  const std::size_t longest = std::min(max_phrase_tokens_, tokens.size() - pos);
  for (std::size_t len = longest; len >= 1; --len) {
    std::vector<std::string> span;
    span.reserve(len);
    for (std::size_t i = pos; i < pos + len; ++i) span.push_back(ascii_lower(tokens[i]));
    std::string phrase = join(span);
    if (auto hit = lookup(phrase)) return DescriptorMatch{*hit, len, phrase};
    if (span.back().size() > 1 && span.back().back() == 's') {
      phrase.pop_back();
      if (auto hit = lookup(phrase)) return DescriptorMatch{*hit, len, phrase};
    }
  }
  return std::nullopt;
}

}  // namespace spot
