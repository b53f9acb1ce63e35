#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spot/server/service.hpp"

namespace spot::test {

/// Service over the TOY features, the shipped area polygons and the baseline
/// translator with the shipped vocabulary and gazetteer.
std::shared_ptr<const Service> toy_service();

struct GoldenCase {
  std::string name;      // golden file stem
  std::string endpoint;  // search | translate | areas | health
  std::string request;   // body, or the prefix for areas
  int expected_status;
};

const std::vector<GoldenCase>& golden_cases();

HttpResponse run_case(const Service& service, const GoldenCase& c);

/// Response as stored on disk: {"status": n, "body": <parsed body>}, with
/// the timing field zeroed.
std::string golden_text(const HttpResponse& response);

struct GoldenOutcome {
  std::string name;
  bool matched = false;
  std::string detail;
};

/// Compares every case with tests/golden/<name>.json. With UPDATE_GOLDEN=1
/// in the environment the files are rewritten instead.
std::vector<GoldenOutcome> check_goldens(const Service& service);

}  // namespace spot::test
