#include "spot/datagen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spot/imr/codec.hpp"
#include "spot/imr/validate.hpp"

namespace spot {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void add_companions(Rng& rng, ImrNode& node, const std::string& bundle_id,
                    std::span<const CooccurrenceEntry> cooccurrence, const GenConfig& config) {
  std::vector<const CooccurrenceEntry*> pool;
  for (const auto& e : cooccurrence) {
    if (e.bundle_id == bundle_id && e.freq > 0.0) pool.push_back(&e);
  }
  const auto key_taken = [&node](const std::string& key) {
    return std::any_of(node.filters.begin(), node.filters.end(), [&](const TagPredicate& p) { return p.key == key; });
  };
  std::erase_if(pool, [&](const CooccurrenceEntry* e) { return key_taken(e->companion.key); });

  const auto k = rng.uniform_int(1, config.max_companions);
  for (std::int64_t i = 0; i < k && !pool.empty(); ++i) {
    double total = 0.0;
    for (const auto* e : pool) total += e->freq;
    double r = rng.uniform01() * total;
    std::size_t pick = pool.size() - 1;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (r < pool[j]->freq) {
        pick = j;
        break;
      }
      r -= pool[j]->freq;
    }
    const Tag tag = pool[pick]->companion;
    node.filters.push_back(TagPredicate::eq(tag.key, tag.value));
    std::erase_if(pool, [&](const CooccurrenceEntry* e) { return e->companion.key == tag.key; });
  }
}

}  // namespace

void GenConfig::check() const {
  if (max_objects < 1) throw std::invalid_argument("max_objects must be >= 1");
  if (max_companions < 1) throw std::invalid_argument("max_companions must be >= 1");
  if (!is_probability(p_companion) || !is_probability(p_edge) || !is_probability(p_named_area)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (!(min_distance_m > 0.0) || !(min_distance_m < max_distance_m)) {
    throw std::invalid_argument("distance range must satisfy 0 < min < max");
  }
  if (std::ceil(min_distance_m / 10.0) > std::floor(max_distance_m / 10.0)) {
    throw std::invalid_argument("distance range holds no multiple of 10");
  }
}

double sample_distance(Rng& rng, const GenConfig& config) {
  const double lo = std::log(config.min_distance_m);
  const double hi = std::log(config.max_distance_m);
  const double d = std::exp(rng.uniform_real(lo, hi));
  const double lowest = std::ceil(config.min_distance_m / 10.0) * 10.0;
  const double highest = std::floor(config.max_distance_m / 10.0) * 10.0;
  return std::clamp(std::round(d / 10.0) * 10.0, lowest, highest);
}

ImrQuery sample_imr(Rng& rng, const Vocabulary& vocabulary, std::span<const CooccurrenceEntry> cooccurrence,
                    std::span<const std::string> gazetteer, const GenConfig& config) {
  config.check();
  const auto& bundles = vocabulary.bundles();
  if (bundles.empty()) throw std::invalid_argument("sample_imr needs a non-empty vocabulary");

  ImrQuery q;
  const auto n = static_cast<int>(rng.uniform_int(1, config.max_objects));
  for (int i = 0; i < n; ++i) {
    const auto& bundle = bundles[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(bundles.size()) - 1))];
    ImrNode node{i, bundle.descriptors.empty() ? bundle.id : bundle.descriptors.front(), bundle_predicates(bundle)};
    if (rng.bernoulli(config.p_companion)) add_companions(rng, node, bundle.id, cooccurrence, config);
    q.nodes.push_back(std::move(node));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(config.p_edge)) q.edges.push_back({i, j, sample_distance(rng, config)});
    }
  }
  if (!gazetteer.empty() && rng.bernoulli(config.p_named_area)) {
    q.area = ImrArea::named(gazetteer[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(gazetteer.size()) - 1))]);
  } else {
    q.area = ImrArea::bbox();
  }

  if (auto errors = validate(q); !errors.empty()) throw ImrInvalid(std::move(errors));
  return q;
}

}  // namespace spot
