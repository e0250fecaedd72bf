#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eventqa {

/// Full Unicode lowercase of UTF-8 text. Invalid sequences are dropped.
std::string to_lower_utf8(std::string_view text);

/// Lowercased runs of letters, digits and combining marks; everything else separates.
std::vector<std::string> split_words(std::string_view text);

}  // namespace eventqa
