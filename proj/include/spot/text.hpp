#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace spot {

/// Lowercases ASCII letters only; other bytes (including UTF-8) pass through.
inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

/// Shortest round-trip decimal text, never in exponent form: 200.0 -> "200".
inline std::string format_number(double value) {
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) return std::to_string(value);
  return {buf, ptr};
}

}  // namespace spot
