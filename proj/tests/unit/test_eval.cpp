#include <doctest.h>

#include <sstream>

#include "../support/fixtures.hpp"
#include "spot/datagen/dataset.hpp"
#include "spot/datagen/rng.hpp"
#include "spot/datagen/sampler.hpp"
#include "spot/datagen/template_sentence.hpp"
#include "spot/eval/evaluate.hpp"
#include "spot/imr/codec.hpp"
#include "spot/nlq/translator.hpp"

using namespace spot;

namespace {

std::vector<DatasetRecord> sample_records(std::size_t n, std::uint64_t seed) {
  const auto& v = spot::test::shipped_vocabulary();
  GenConfig c;
  c.p_companion = 0;
  c.max_objects = 2;
  Rng rng(seed);
  std::vector<DatasetRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    DatasetRecord r;
    r.id = "r" + std::to_string(i);
    r.imr = sample_imr(rng, v, {}, spot::test::shipped_gazetteer(), c);
    r.style = "terse";
    r.sentence = "sentence " + std::to_string(i);
    out.push_back(std::move(r));
  }
  return out;
}

MockTranslator identity_mock(const std::vector<DatasetRecord>& records) {
  MockTranslator m;
  for (const auto& r : records) m.add(*r.sentence, nlohmann::json::parse(encode(r.imr)));
  return m;
}

class FailingTranslator final : public Translator {
 public:
  std::string name() const override { return "failing"; }
  ImrQuery translate(std::string_view) const override { throw FormatInvalid({"/: must be an object"}); }
};

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("identity translator scores perfectly") {
  const auto records = sample_records(40, 1);
  const auto mock = identity_mock(records);
  const auto report = evaluate(mock, records);
  CHECK(report.translator == "mock");
  CHECK(report.n_total == 40);
  CHECK(report.n_skipped == 0);
  CHECK(report.n_format_valid == 40);
  CHECK(report.format_validity_rate == 1.0);
  CHECK(report.mean_overall == 1.0);
  CHECK(report.exact_match_rate == 1.0);
  CHECK(report.strict_mean_overall == 1.0);
  REQUIRE(report.rows.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) CHECK(report.rows[i].id == records[i].id);
}

TEST_CASE("always failing translator scores zero") {
  const auto records = sample_records(10, 2);
  const auto report = evaluate(FailingTranslator{}, records);
  CHECK(report.n_format_valid == 0);
  CHECK(report.format_validity_rate == 0.0);
  CHECK(report.mean_overall == 0.0);
  CHECK(report.strict_mean_overall == 0.0);
  for (const auto& row : report.rows) {
    CHECK_FALSE(row.format_valid);
    REQUIRE(row.error);
    CHECK(row.error->rfind("FormatInvalid: ", 0) == 0);
    CHECK(row.score.overall == 0.0);
  }
}

TEST_CASE("mixed results aggregate consistently") {
  auto records = sample_records(30, 3);
  MockTranslator mock;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i % 3 == 0) continue;  // unknown sentence: transport error
    auto imr = records[i].imr;
    if (i % 3 == 2) imr.area = imr.area.kind == AreaKind::bbox ? ImrArea::named("Bonn") : ImrArea::bbox();
    mock.add(*records[i].sentence, nlohmann::json::parse(encode(imr)));
  }
  records[5].sentence.reset();
  records[5].error = "llm failed";

  const auto report = evaluate(mock, records);
  CHECK(report.n_total == 29);
  CHECK(report.n_skipped == 1);
  CHECK(report.rows.size() == 29);

  std::size_t valid = 0;
  double sum = 0, exact = 0, area = 0;
  for (const auto& row : report.rows) {
    if (!row.format_valid) continue;
    ++valid;
    sum += row.score.overall;
    exact += row.score.exact ? 1 : 0;
    area += row.score.area;
  }
  CHECK(report.n_format_valid == valid);
  CHECK(report.format_validity_rate == doctest::Approx(static_cast<double>(valid) / 29.0));
  CHECK(report.mean_overall == doctest::Approx(sum / static_cast<double>(valid)));
  CHECK(report.exact_match_rate == doctest::Approx(exact / static_cast<double>(valid)));
  CHECK(report.area_accuracy == doctest::Approx(area / static_cast<double>(valid)));
  CHECK(report.strict_mean_overall == doctest::Approx(sum / 29.0));
  CHECK(report.mean_overall < 1.0);
  CHECK(report.mean_overall > 0.5);

  auto copy = report;
  copy.mean_overall = -1;
  aggregate(copy);
  CHECK(copy.mean_overall == doctest::Approx(report.mean_overall));

  const auto threaded = evaluate(mock, records, 4);
  CHECK(report_to_json(threaded).dump() == report_to_json(report).dump());
}

TEST_CASE("report json") {
  const auto records = sample_records(3, 4);
  const auto report = evaluate(identity_mock(records), records);
  const auto j = report_to_json(report);
  CHECK(j["translator"] == "mock");
  CHECK(j["format_validity_rate"] == 1.0);
  CHECK(j["mean_overall"] == 1.0);
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["id"] == "r0");
  CHECK(j["rows"][0].contains("predicted"));
}

TEST_CASE("empty dataset") {
  const auto report = evaluate(FailingTranslator{}, {});
  CHECK(report.n_total == 0);
  CHECK(report.format_validity_rate == 0.0);
  CHECK(report.mean_overall == 0.0);
}

}  // TEST_SUITE
