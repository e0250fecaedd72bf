#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/kg.hpp"
#include "eventqa/query.hpp"

namespace eventqa {

enum class FailureCategory : std::uint8_t {
  structural,  // the query cannot be expressed in the target model
  coverage,    // expressible, but the target graph lacks the facts
};

std::string_view to_string(FailureCategory category);

class TranslationError : public Error {
 public:
  TranslationError(std::string message, FailureCategory category)
      : Error(std::move(message)), category_(category) {}
  [[nodiscard]] FailureCategory category() const noexcept { return category_; }

 private:
  FailureCategory category_;
};

class UnmappedEntity : public TranslationError {
 public:
  explicit UnmappedEntity(const std::string& iri)
      : TranslationError("no same-as target for " + iri, FailureCategory::structural) {}
};

class UnmappedTemporal : public TranslationError {
 public:
  UnmappedTemporal(const std::string& node, FailureCategory category)
      : TranslationError("no target temporal predicate for " + node, category) {}
};

class MissingRoleType : public TranslationError {
 public:
  explicit MissingRoleType(const std::string& relation)
      : TranslationError("relation without a role type: " + relation, FailureCategory::structural) {}
};

class NotCoveredByTarget : public TranslationError {
 public:
  NotCoveredByTarget() : TranslationError("translated query has no answer in the target graph", FailureCategory::coverage) {}
};

struct MappingTable {
  /// Source node IRI -> target IRI; functional.
  std::map<std::string, std::string> same_as;
  /// Source temporal predicates that mark a begin or an end.
  std::vector<std::string> begin_predicates;
  std::vector<std::string> end_predicates;
  /// Target predicates tried in order for a begin or an end anchor.
  std::vector<std::string> begin_candidates;
  std::vector<std::string> end_candidates;
  /// Typing added to event variables in the target; empty for none.
  std::string event_type;

  /// EventKG begin/end predicates, DBpedia candidates, no same-as pairs.
  static MappingTable defaults();
  /// Reads `s <same-as> o` triples (other predicates ignored). Throws DataError when a
  /// source maps to two targets.
  static MappingTable from_same_as(std::istream& in, const std::string& same_as_predicate = {});
  static MappingTable load(const std::filesystem::path& path, const std::string& same_as_predicate = {});
  /// First sorted alias of every node carrying one.
  static MappingTable from_graph(const KnowledgeGraph& kg);

  /// `begin = dbp:year, dbo:date` style lines (keys: begin, end, source.begin,
  /// source.end, event_type) replace the corresponding lists. Throws DataError.
  void load_temporal_config(std::string_view text);

  /// Throws DataError for empty candidate lists.
  void validate() const;

  [[nodiscard]] bool is_target(const std::string& iri) const;

 private:
  mutable std::optional<std::set<std::string>> targets_;
};

/// Rewrites a reified query into the direct model. Throws TranslationError subclasses.
SemanticQuery translate(const SemanticQuery& q, const MappingTable& m, const KnowledgeGraph* target_kg = nullptr);

struct TranslationFailure {
  std::string id;
  std::string reason;
  FailureCategory category = FailureCategory::structural;

  bool operator==(const TranslationFailure&) const = default;
};

struct TranslationReport {
  std::size_t total = 0;
  std::size_t translated = 0;
  std::vector<TranslationFailure> failures;
};

struct TranslationResult {
  /// Aligned with the input; absent where translation failed.
  std::vector<std::optional<SemanticQuery>> queries;
  TranslationReport report;
};

/// `ids` names each query in the report; 1-based positions when empty.
TranslationResult translate_dataset(std::span<const SemanticQuery> queries, const MappingTable& m,
                                    const KnowledgeGraph* target_kg = nullptr,
                                    std::span<const std::string> ids = {});

}  // namespace eventqa
