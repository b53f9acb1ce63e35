#include "spot/datagen/prompt.hpp"

#include <array>
#include <sstream>

#include "spot/imr/canonical.hpp"
#include "spot/text.hpp"

namespace spot {

namespace {

struct Style {
  std::string_view name;
  std::string_view instruction;
};

constexpr std::array<Style, 8> kStyles{{
    {"terse", "Style: terse. Use as few words as possible."},
    {"verbose journalist", "Style: verbose journalist. Write a long, descriptive sentence as a reporter would."},
    {"tourist with typos", "Style: tourist with typos. Write like a hurried visitor and include one or two spelling mistakes."},
    {"formal", "Style: formal. Use polite, complete and grammatical language."},
    {"imperative", "Style: imperative. Phrase the request as a direct command."},
    {"question form", "Style: question form. Phrase the request as a question."},
    {"hedged", "Style: hedged. Sound unsure, for example with 'maybe' or 'I think'."},
    {"telegraphic", "Style: telegraphic. Drop articles and verbs, keep only the key words."},
}};

constexpr auto kStyleNames = [] {
  std::array<std::string_view, kStyles.size()> names{};
  for (std::size_t i = 0; i < kStyles.size(); ++i) names[i] = kStyles[i].name;
  return names;
}();

std::string describe(const TagPredicate& p) {
  switch (p.op) {
    case PredicateOp::eq:
      return p.key + "=" + p.values.front();
    case PredicateOp::one_of: {
      std::string out;
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (i) out += " or ";
        out += p.key + "=" + p.values[i];
      }
      return "(" + out + ")";
    }
    case PredicateOp::exists:
      return p.key + "=*";
  }
  return {};
}

}  // namespace

std::span<const std::string_view> prompt_styles() { return kStyleNames; }

std::string_view style_instruction(std::string_view style) {
  for (const auto& s : kStyles) {
    if (s.name == style) return s.instruction;
  }
  throw UnknownStyle(style);
}

std::string render_prompt(const ImrQuery& query, std::string_view style) {
  const auto instruction = style_instruction(style);
  const ImrQuery q = canonicalize(query);

  std::ostringstream out;
  out << "Write one search request that a person could type into a map search box.\n";
  out << "The request looks for " << q.nodes.size() << (q.nodes.size() == 1 ? " object" : " objects")
      << " in public space:\n";
  for (const auto& node : q.nodes) {
    out << "- object " << node.id + 1 << ": ";
    for (std::size_t i = 0; i < node.filters.size(); ++i) {
      if (i) out << " and ";
      out << describe(node.filters[i]);
    }
    out << "\n";
  }
  if (q.edges.empty()) {
    out << "There are no distance constraints.\n";
  } else {
    out << "Distance constraints:\n";
    for (const auto& e : q.edges) {
      out << "- object " << e.src + 1 << " is at most " << format_number(e.max_distance_m) << " m from object " << e.dst + 1
          << "\n";
    }
  }
  if (q.area.kind == AreaKind::named) {
    out << "Search area: " << q.area.value << "\n";
  } else {
    out << "Search area: the user's current map view (do not name a place)\n";
  }
  out << "Mention every object, distance and area, and do not use the raw tag syntax.\n";
  out << "\n" << instruction << "\n";
  return out.str();
}

}  // namespace spot
