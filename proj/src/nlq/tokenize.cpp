#include "spot/nlq/tokenize.hpp"

#include <algorithm>

namespace spot {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_word_byte(char c) { return is_digit(c) || is_alpha(c) || static_cast<unsigned char>(c) >= 0x80; }

}  // namespace

std::vector<std::string> tokenize(std::string_view sentence) {
  std::string cleaned;
  cleaned.reserve(sentence.size() + 8);
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    char c = sentence[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c == '.' && i > 0 && i + 1 < sentence.size() && is_digit(sentence[i - 1]) && is_digit(sentence[i + 1])) {
      cleaned += c;
      continue;
    }
    if (!is_word_byte(c)) {
      cleaned += ' ';
      continue;
    }
    if (is_alpha(c) && !cleaned.empty() && is_digit(cleaned.back())) cleaned += ' ';
    cleaned += c;
  }

  std::vector<std::string> tokens;
  std::string current;
  for (char c : cleaned) {
    if (c == ' ') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end) {
  end = std::min(end, tokens.size());
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace spot
