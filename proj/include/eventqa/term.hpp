#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace eventqa {

struct Literal {
  std::string lexical;
  std::string datatype;  // full IRI or empty
  std::string language;  // empty unless a language-tagged string

  auto operator<=>(const Literal&) const = default;
};

enum class TermKind : std::uint8_t { iri, blank, literal };

/// An RDF term as it appears in N-Triples.
struct Term {
  TermKind kind = TermKind::iri;
  std::string value;  // IRI, blank-node label (without "_:"), or literal lexical form
  std::string datatype;
  std::string language;

  static Term make_iri(std::string iri) { return {TermKind::iri, std::move(iri), {}, {}}; }
  static Term make_blank(std::string label) { return {TermKind::blank, std::move(label), {}, {}}; }
  static Term make_literal(Literal lit) {
    return {TermKind::literal, std::move(lit.lexical), std::move(lit.datatype),
            std::move(lit.language)};
  }

  [[nodiscard]] bool is_iri() const noexcept { return kind == TermKind::iri; }
  [[nodiscard]] bool is_blank() const noexcept { return kind == TermKind::blank; }
  [[nodiscard]] bool is_literal() const noexcept { return kind == TermKind::literal; }
  [[nodiscard]] Literal literal() const { return {value, datatype, language}; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

enum class Granularity : std::uint8_t { year, day };

/// A temporal literal read as a closed day interval. A bare year Y covers
/// [Y-01-01, Y-12-31]; a date covers exactly one day.
struct TemporalValue {
  std::int32_t first_day = 0;  // days since 1970-01-01
  std::int32_t last_day = 0;
  Granularity granularity = Granularity::day;

  auto operator<=>(const TemporalValue&) const = default;
};

/// Accepts `YYYY` and `YYYY-MM-DD` (optionally with a leading '-') when the datatype
/// is absent, xsd:date, xsd:gYear, xsd:integer or xsd:string. Anything else is nullopt.
std::optional<TemporalValue> parse_temporal(const Literal& literal);

/// Moves a temporal literal by `units` of its own granularity (years for `YYYY`, days for
/// dates), keeping lexical shape and datatype. Requires parse_temporal(literal).
Literal shift_temporal(const Literal& literal, int units);

/// `YYYY-MM-DD` typed xsd:date.
Literal date_literal(std::int32_t day);

}  // namespace eventqa
