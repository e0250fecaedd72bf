#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/kg.hpp"
#include "eventqa/query.hpp"
#include "eventqa/term.hpp"

namespace eventqa {

/// A FILTER bound that is not a temporal literal.
class TypeMismatch : public Error {
 public:
  using Error::Error;
};

struct AnswerSet {
  QueryType kind = QueryType::ask;
  bool boolean = false;
  /// Distinct bindings of `variable`, ascending.
  std::string variable;
  std::vector<Term> bindings;
  std::uint64_t count = 0;

  bool operator==(const AnswerSet&) const = default;
};

/// BGP matching over the graph's indexes, smallest candidate set first. Reified patterns
/// match reified relations; plain patterns in a reified query match direct relations.
/// Unknown IRIs give empty results. Throws TypeMismatch.
AnswerSet evaluate(const KnowledgeGraph& kg, const SemanticQuery& q);

/// Index-free full-domain enumeration: every node and literal is tried for the
/// variable and every pattern is checked by a scan over all relations.
AnswerSet brute_force_oracle(const KnowledgeGraph& kg, const SemanticQuery& q);

/// Whether `value` satisfies the constraint bounds; false for non-temporal values.
/// Throws TypeMismatch for a non-temporal bound.
bool passes_filter(const TemporalConstraint& c, const Literal& value);

}  // namespace eventqa
