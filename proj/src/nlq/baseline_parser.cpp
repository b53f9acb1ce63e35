#include "spot/nlq/baseline_parser.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "spot/imr/codec.hpp"
#include "spot/imr/validate.hpp"
#include "spot/nlq/tokenize.hpp"

namespace spot {

namespace {

struct Mention {
  std::size_t begin = 0;
  std::size_t end = 0;
  DescriptorMatch match;
};

std::optional<double> unit_factor(const std::string& unit) {
  if (unit == "m" || unit == "meter" || unit == "meters" || unit == "metre" || unit == "metres") return 1.0;
  if (unit == "km" || unit == "kilometer" || unit == "kilometers" || unit == "kilometre" || unit == "kilometres") {
    return 1000.0;
  }
  return std::nullopt;
}

std::optional<double> positive_number(const std::string& token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value) || value <= 0.0) {
    return std::nullopt;
  }
  return value;
}

class Gap {
 public:
  Gap(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end)
      : tokens_(tokens), begin_(begin), end_(end) {}

  bool word(std::size_t at, std::string_view w) const { return at < end_ && tokens_[at] == w; }

  std::optional<double> quantity(std::size_t at) const {
    if (at + 1 >= end_) return std::nullopt;
    auto n = positive_number(tokens_[at]);
    auto f = unit_factor(tokens_[at + 1]);
    if (!n || !f) return std::nullopt;
    return *n * *f;
  }

  /// Distance of the first phrase in the gap, if any.
  std::optional<double> distance(double near_m) const {
    for (std::size_t s = begin_; s < end_; ++s) {
      if (word(s, "within")) {
        if (auto d = quantity(s + 1); d && word(s + 3, "of")) return d;
      }
      if (word(s, "no") && word(s + 1, "more") && word(s + 2, "than")) {
        if (auto d = quantity(s + 3); d && word(s + 5, "from")) return d;
      }
      if (word(s, "less") && word(s + 1, "than")) {
        if (auto d = quantity(s + 2); d && word(s + 4, "from")) return d;
      }
      if (auto d = quantity(s)) {
        if (word(s + 2, "from") || (word(s + 2, "away") && word(s + 3, "from"))) return d;
      }
      if (word(s, "near") || word(s, "beside")) return near_m;
      if ((word(s, "next") || word(s, "close")) && word(s + 1, "to")) return near_m;
    }
    return std::nullopt;
  }

 private:
  const std::vector<std::string>& tokens_;
  std::size_t begin_;
  std::size_t end_;
};

}  // namespace

ImrQuery parse_baseline(std::string_view sentence, const ParserConfig& config) {
  if (!config.vocabulary) throw std::invalid_argument("parser needs a vocabulary");
  if (!(config.default_near_distance_m > 0.0)) throw std::invalid_argument("near distance must be positive");

  auto tokens = tokenize(sentence);
  ImrQuery q;
  q.area = ImrArea::bbox();

  // Earliest "in" wins so the longest matching suffix is taken.
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i] != "in") continue;
    const std::string tail = join_tokens(tokens, i + 1);
    const std::string* hit = nullptr;
    for (const auto& name : config.gazetteer) {
      if (join_tokens(tokenize(name)) == tail) {
        hit = &name;
        break;
      }
    }
    if (hit) {
      q.area = ImrArea::named(*hit);
      tokens.resize(i);
      break;
    }
  }

  std::vector<Mention> mentions;
  for (std::size_t pos = 0; pos < tokens.size();) {
    if (auto m = config.vocabulary->match_descriptor(tokens, pos)) {
      mentions.push_back({pos, pos + m->length, *m});
      pos += m->length;
    } else {
      ++pos;
    }
  }
  if (mentions.empty()) throw NoObjectsFound(join_tokens(tokens));

  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const auto& bundle = config.vocabulary->bundles()[mentions[i].match.bundle];
    q.nodes.push_back({static_cast<int>(i), mentions[i].match.descriptor, bundle_predicates(bundle)});
  }
  for (std::size_t i = 0; i + 1 < mentions.size(); ++i) {
    const Gap gap(tokens, mentions[i].end, mentions[i + 1].begin);
    if (auto d = gap.distance(config.default_near_distance_m)) {
      q.edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), *d});
    }
  }

  if (auto errors = validate(q); !errors.empty()) throw ImrInvalid(std::move(errors));
  return q;
}

}  // namespace spot
