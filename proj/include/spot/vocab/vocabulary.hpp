#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spot/error.hpp"
#include "spot/imr/imr.hpp"
#include "spot/ingest/feature.hpp"

namespace spot {

struct Tag {
  std::string key;
  std::string value;

  std::string str() const { return key + "=" + value; }
  /// Splits on the first '='; nullopt unless both sides are non-empty.
  static std::optional<Tag> parse(std::string_view text);

  friend auto operator<=>(const Tag&, const Tag&) = default;
};

/// Visually similar tags grouped under natural-language descriptors. A
/// feature matches the bundle when it carries any of the tags.
struct TagBundle {
  std::string id;
  std::vector<Tag> tags;
  std::vector<std::string> descriptors;

  bool matches(const TagMap& feature_tags) const;
  bool has_tag(const Tag& tag) const;
};

/// IMR filters for a bundle: one tag gives eq, several values of one key give
/// one_of, several keys give a conjunction of eq predicates.
std::vector<TagPredicate> bundle_predicates(const TagBundle& bundle);

class VocabularyError : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "VocabularyError"; }
};

struct DescriptorMatch {
  std::size_t bundle = 0;
  std::size_t length = 0;   // tokens consumed
  std::string descriptor;   // the descriptor phrase as stored
};

class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws VocabularyError on empty input, malformed records, duplicate ids
  /// or a descriptor claimed twice.
  static Vocabulary from_bundles(std::vector<TagBundle> bundles);
  /// JSON lines `{"id":..,"tags":["k=v",..],"descriptors":[..]}`.
  static Vocabulary parse(std::istream& in);
  static Vocabulary load(const std::string& path);

  const std::vector<TagBundle>& bundles() const noexcept { return bundles_; }
  const TagBundle* find(std::string_view id) const;
  std::optional<std::size_t> lookup(std::string_view descriptor) const;

  /// Longest descriptor phrase starting at tokens[pos], whole tokens only.
  /// When a span misses, it is retried with one trailing 's' stripped from its
  /// last token.
  std::optional<DescriptorMatch> match_descriptor(std::span<const std::string> tokens, std::size_t pos) const;

 private:
  std::vector<TagBundle> bundles_;
  std::unordered_map<std::string, std::size_t> by_descriptor_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::size_t max_phrase_tokens_ = 0;
};

}  // namespace spot
