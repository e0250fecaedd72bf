#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/evaluator.hpp"
#include "eventqa/kg.hpp"
#include "eventqa/query.hpp"

namespace eventqa {

class EmptySet : public Error {
 public:
  EmptySet() : Error("metric needs at least one item") {}
};

class SingletonSet : public Error {
 public:
  SingletonSet() : Error("diversity needs at least two items") {}
};

class MissingLanguage : public Error {
 public:
  explicit MissingLanguage(std::string_view language)
      : Error("no verbalizations in language '" + std::string(language) + "'") {}
};

/// Term -> frequency.
using TermVector = std::map<std::string, std::uint32_t>;

/// Mean relation_count. Throws EmptySet.
double complexity(std::span<const SemanticQuery> queries);

/// Jaccard index of element sets; 0 when both are empty.
double query_similarity(const SemanticQuery& a, const SemanticQuery& b);
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// 1 - mean pairwise similarity over unordered pairs. Throws EmptySet, SingletonSet.
double query_diversity(std::span<const SemanticQuery> queries);

/// Unicode lowercase words with their counts. The language tag does not change the
/// rules (no stemming, no stop words).
TermVector tokenize(std::string_view text, std::string_view language = {});

/// Cosine of term frequencies; 0 when either vector is empty.
double verbalization_similarity(const TermVector& a, const TermVector& b);

/// 1 - mean pairwise cosine over the non-empty texts. Throws MissingLanguage when no
/// text is present, SingletonSet when only one is.
double verbalization_diversity(std::span<const std::string> texts, std::string_view language = {});

struct DatasetStats {
  std::set<std::string> events;
  std::set<std::string> entities;
  std::set<std::string> predicates;
  /// Frequency descending, ties by IRI.
  std::vector<std::pair<std::string, std::size_t>> predicate_ranking;
};

/// Distinct events, entities and predicates over concrete nodes and variable bindings.
/// With a graph, nodes are classified by its event set; without one, a node is an event
/// when it binds a variable named `event*` or typed with an event type. `answers`, when
/// given, is aligned with `queries` and contributes SELECT bindings.
DatasetStats dataset_stats(std::span<const SemanticQuery> queries, const KnowledgeGraph* kg = nullptr,
                           std::span<const AnswerSet> answers = {});

}  // namespace eventqa
