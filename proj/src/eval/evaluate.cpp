#include "spot/eval/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "spot/error.hpp"
#include "spot/imr/canonical.hpp"
#include "spot/imr/codec.hpp"

namespace spot {

namespace {

EvalRow score_record(const Translator& translator, const DatasetRecord& record) {
  EvalRow row;
  row.id = record.id;
  row.sentence = *record.sentence;
  try {
    row.predicted = translator.translate(row.sentence);
    row.format_valid = true;
    row.score = semantic_score(*row.predicted, record.imr);
  } catch (const Error& e) {
    row.error = std::string(e.code()) + ": " + e.what();
  } catch (const std::exception& e) {
    row.error = std::string("Error: ") + e.what();
  }
  return row;
}

double ratio(double num, std::size_t den) { return den ? num / static_cast<double>(den) : 0.0; }

}  // namespace

void aggregate(EvalReport& report) {
  report.n_total = report.rows.size();
  report.n_format_valid = 0;
  double overall = 0, node = 0, edge = 0, area = 0, exact = 0;
  for (const auto& row : report.rows) {
    if (!row.format_valid) continue;
    ++report.n_format_valid;
    overall += row.score.overall;
    node += row.score.node_f1;
    edge += row.score.edge_f1;
    area += row.score.area;
    exact += row.score.exact ? 1.0 : 0.0;
  }
  report.format_validity_rate = ratio(static_cast<double>(report.n_format_valid), report.n_total);
  report.mean_overall = ratio(overall, report.n_format_valid);
  report.mean_node_f1 = ratio(node, report.n_format_valid);
  report.mean_edge_f1 = ratio(edge, report.n_format_valid);
  report.area_accuracy = ratio(area, report.n_format_valid);
  report.exact_match_rate = ratio(exact, report.n_format_valid);
  report.strict_mean_overall = ratio(overall, report.n_total);
  report.strict_exact_match_rate = ratio(exact, report.n_total);
}

EvalReport evaluate(const Translator& translator, std::span<const DatasetRecord> dataset, std::size_t threads) {
  std::vector<const DatasetRecord*> usable;
  for (const auto& r : dataset) {
    if (r.sentence) usable.push_back(&r);
  }

  EvalReport report;
  report.translator = translator.name();
  report.n_skipped = dataset.size() - usable.size();
  report.rows.resize(usable.size());
  if (threads <= 1 || usable.size() <= 1) {
    for (std::size_t i = 0; i < usable.size(); ++i) report.rows[i] = score_record(translator, *usable[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < std::min(threads, usable.size()); ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < usable.size(); i = next++) report.rows[i] = score_record(translator, *usable[i]);
      });
    }
  }
  aggregate(report);
  return report;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["translator"] = report.translator;
  j["n_total"] = report.n_total;
  j["n_skipped"] = report.n_skipped;
  j["n_format_valid"] = report.n_format_valid;
  j["format_validity_rate"] = report.format_validity_rate;
  j["mean_overall"] = report.mean_overall;
  j["mean_node_f1"] = report.mean_node_f1;
  j["mean_edge_f1"] = report.mean_edge_f1;
  j["area_accuracy"] = report.area_accuracy;
  j["exact_match_rate"] = report.exact_match_rate;
  j["strict_mean_overall"] = report.strict_mean_overall;
  j["strict_exact_match_rate"] = report.strict_exact_match_rate;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["id"] = row.id;
    r["sentence"] = row.sentence;
    r["format_valid"] = row.format_valid;
    if (row.error) r["error"] = *row.error;
    if (row.predicted) r["predicted"] = to_json(canonicalize(*row.predicted));
    r["exact"] = row.score.exact;
    r["area"] = row.score.area;
    r["node_f1"] = row.score.node_f1;
    r["edge_f1"] = row.score.edge_f1;
    r["overall"] = row.score.overall;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace spot
