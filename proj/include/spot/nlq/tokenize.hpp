#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spot {

/// Lowercases, turns punctuation into spaces (keeping decimal points between
/// digits), splits a number from a directly attached unit ("200m") and splits
/// on whitespace. Bytes >= 0x80 are kept, so UTF-8 names survive.
std::vector<std::string> tokenize(std::string_view sentence);

std::string join_tokens(const std::vector<std::string>& tokens, std::size_t begin = 0,
                        std::size_t end = std::string::npos);

}  // namespace spot
