#pragma once

#include <span>
#include <string>
#include <string_view>

#include "spot/error.hpp"
#include "spot/imr/imr.hpp"

namespace spot {

class UnknownStyle : public Error {
 public:
  explicit UnknownStyle(std::string_view style) : Error("unknown prompt style '" + std::string(style) + "'") {}
  std::string_view code() const noexcept override { return "UnknownStyle"; }
};

/// The shipped style names, in a fixed order.
std::span<const std::string_view> prompt_styles();
/// Instruction sentence for a style; throws UnknownStyle.
std::string_view style_instruction(std::string_view style);

/// LLM prompt listing every object with its tags (canonical order), every
/// distance constraint and the area, followed by a blank line and the style
/// instruction. Everything above the instruction depends on the query only.
std::string render_prompt(const ImrQuery& query, std::string_view style);

}  // namespace spot
