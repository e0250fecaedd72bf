#include "eventqa/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace eventqa {

namespace {

void append(std::string& out, UChar32 cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, cp, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

template <typename Visit>
void for_each_code_point(std::string_view text, Visit&& visit) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 cp = 0;
    U8_NEXT(s, i, length, cp);
    if (cp >= 0) visit(cp);
  }
}

bool word_char(UChar32 cp) {
  if (u_isalnum(cp)) return true;
  const auto category = u_charType(cp);
  return category == U_NON_SPACING_MARK || category == U_COMBINING_SPACING_MARK ||
         category == U_ENCLOSING_MARK;
}

}  // namespace

std::string to_lower_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for_each_code_point(text, [&](UChar32 cp) { append(out, u_tolower(cp)); });
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for_each_code_point(text, [&](UChar32 cp) {
    if (word_char(cp)) {
      append(current, u_tolower(cp));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  });
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace eventqa
