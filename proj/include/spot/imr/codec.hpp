#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spot/error.hpp"
#include "spot/imr/imr.hpp"

namespace spot {

class ImrSyntaxError : public Error {
 public:
  ImrSyntaxError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }
  std::string_view code() const noexcept override { return "ImrSyntaxError"; }

 private:
  std::size_t byte_offset_;
};

class ImrInvalid : public Error {
 public:
  explicit ImrInvalid(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }
  std::string_view code() const noexcept override { return "InvalidImr"; }

 private:
  std::vector<std::string> errors_;
};

nlohmann::ordered_json predicate_to_json(const TagPredicate& predicate);
nlohmann::ordered_json to_json(const ImrQuery& query);

/// Compact JSON with fixed field order; deterministic.
std::string encode(const ImrQuery& query);

/// Throws ImrSyntaxError on malformed JSON and ImrInvalid when the document
/// breaks an IMR invariant.
ImrQuery decode(std::string_view text);
ImrQuery from_json(const nlohmann::json& document);

/// Serialized predicate, e.g. `{"key":"amenity","op":"eq","value":"cafe"}`.
std::string predicate_signature(const TagPredicate& predicate);
/// Serialized filter list of a node, the node's identity for canonical order.
std::string node_signature(const ImrNode& node);

}  // namespace spot
