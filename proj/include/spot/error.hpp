#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spot {

/// Base of every error this library raises on bad input or data. `code()` is a
/// stable identifier used in machine-readable error bodies.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view code() const noexcept { return "Error"; }
};

}  // namespace spot
