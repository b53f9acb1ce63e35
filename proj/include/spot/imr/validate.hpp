#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spot/imr/imr.hpp"

namespace spot {

struct Validation {
  std::optional<ImrQuery> query;    // set iff errors is empty
  std::vector<std::string> errors;  // "<json path>: <message>"

  bool valid() const noexcept { return errors.empty(); }
};

/// Checks a parsed document against every IMR invariant and reports all
/// violations, each prefixed with a JSON-path-style locator.
Validation validate(const nlohmann::json& document);

/// Same checks on an in-memory query.
std::vector<std::string> validate(const ImrQuery& query);

}  // namespace spot
