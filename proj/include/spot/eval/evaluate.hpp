#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spot/datagen/dataset.hpp"
#include "spot/imr/score.hpp"
#include "spot/nlq/translator.hpp"

namespace spot {

struct EvalRow {
  std::string id;
  std::string sentence;
  bool format_valid = false;
  std::optional<std::string> error;      // "<code>: <message>" when not valid
  std::optional<ImrQuery> predicted;     // when valid
  SemanticScore score;                   // zeros when not valid
};

struct EvalReport {
  std::string translator;
  std::size_t n_total = 0;
  std::size_t n_skipped = 0;  // records without a sentence, not scored
  std::size_t n_format_valid = 0;
  double format_validity_rate = 0.0;
  // Means over format-valid rows.
  double mean_overall = 0.0;
  double mean_node_f1 = 0.0;
  double mean_edge_f1 = 0.0;
  double area_accuracy = 0.0;
  double exact_match_rate = 0.0;
  // Means over all scored rows, invalid ones counting as 0.
  double strict_mean_overall = 0.0;
  double strict_exact_match_rate = 0.0;
  std::vector<EvalRow> rows;
};

/// Translates every record that has a sentence and scores the output against
/// the record's IMR. Rows keep input order; `threads` > 1 translates
/// concurrently without changing the result.
EvalReport evaluate(const Translator& translator, std::span<const DatasetRecord> dataset, std::size_t threads = 1);

/// Recomputes the aggregates from `rows` (the report is a function of them).
void aggregate(EvalReport& report);

nlohmann::ordered_json report_to_json(const EvalReport& report);

}  // namespace spot
