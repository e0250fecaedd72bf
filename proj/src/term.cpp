#include "eventqa/term.hpp"

#include <cassert>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "eventqa/vocabulary.hpp"

namespace eventqa {

namespace {

using namespace std::chrono;

bool temporal_datatype(std::string_view datatype) {
  return datatype.empty() || datatype == vocab::xsd_date || datatype == vocab::xsd_gyear ||
         datatype == vocab::xsd_integer || datatype == vocab::xsd_string;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  return value;
}

std::int32_t to_days(const year_month_day& ymd) {
  return static_cast<std::int32_t>(sys_days(ymd).time_since_epoch().count());
}

std::string format_year(int y) {
  char buf[16];
  if (y < 0) {
    std::snprintf(buf, sizeof buf, "-%04d", -y);
  } else {
    std::snprintf(buf, sizeof buf, "%04d", y);
  }
  return buf;
}

std::string format_date(std::int32_t day) {
  year_month_day ymd{sys_days{days{day}}};
  char buf[8];
  std::snprintf(buf, sizeof buf, "-%02u-%02u", static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return format_year(static_cast<int>(ymd.year())) + buf;
}

struct Parsed {
  int year = 0;
  int month = 0;
  int day = 0;
  bool has_day = false;
};

std::optional<Parsed> parse_lexical(std::string_view lex) {
  bool negative = false;
  if (!lex.empty() && lex.front() == '-') {
    negative = true;
    lex.remove_prefix(1);
  }
  Parsed p;
  if (lex.size() == 4 && all_digits(lex)) {
    p.year = to_int(lex);
  } else if (lex.size() == 10 && lex[4] == '-' && lex[7] == '-' && all_digits(lex.substr(0, 4)) &&
             all_digits(lex.substr(5, 2)) && all_digits(lex.substr(8, 2))) {
    p.year = to_int(lex.substr(0, 4));
    p.month = to_int(lex.substr(5, 2));
    p.day = to_int(lex.substr(8, 2));
    p.has_day = true;
  } else {
    return std::nullopt;
  }
  if (negative) p.year = -p.year;
  return p;
}

}  // namespace

std::optional<TemporalValue> parse_temporal(const Literal& literal) {
  if (!literal.language.empty() || !temporal_datatype(literal.datatype)) return std::nullopt;
  auto parsed = parse_lexical(literal.lexical);
  if (!parsed) return std::nullopt;
  const year y{parsed->year};
  if (!parsed->has_day) {
    if (literal.datatype == vocab::xsd_date) return std::nullopt;
    return TemporalValue{to_days(y / January / 1), to_days(y / December / 31), Granularity::year};
  }
  if (literal.datatype == vocab::xsd_gyear || literal.datatype == vocab::xsd_integer) {
    return std::nullopt;
  }
  year_month_day ymd{y, month{static_cast<unsigned>(parsed->month)},
                     day{static_cast<unsigned>(parsed->day)}};
  if (!ymd.ok()) return std::nullopt;
  const auto d = to_days(ymd);
  return TemporalValue{d, d, Granularity::day};
}

Literal shift_temporal(const Literal& literal, int units) {
  auto value = parse_temporal(literal);
  assert(value);
  Literal out = literal;
  if (value->granularity == Granularity::year) {
    const int y = static_cast<int>(year_month_day{sys_days{days{value->first_day}}}.year());
    out.lexical = format_year(y + units);
  } else {
    out.lexical = format_date(value->first_day + units);
  }
  return out;
}

Literal date_literal(std::int32_t day) { return Literal{format_date(day), vocab::xsd_date, {}}; }

}  // namespace eventqa
