#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/kg.hpp"
#include "eventqa/query.hpp"
#include "eventqa/rng.hpp"

namespace eventqa {

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class EmptyEventSet : public Error {
 public:
  EmptyEventSet() : Error("the graph has no events") {}
};

class NoEligibleSeed : public Error {
 public:
  explicit NoEligibleSeed(const std::string& event)
      : Error("no extensible relation incident to " + event) {}
};

class WalkStuck : public Error {
 public:
  WalkStuck() : Error("random walk found no new relation within the attempt budget") {}
};

class NoEligibleVariable : public Error {
 public:
  NoEligibleVariable() : Error("no position may host the variable") {}
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

struct GeneratorConfig {
  std::size_t max_relations = 2;
  /// ASK, SELECT, COUNT.
  std::array<double, 3> type_weights{1.0, 1.0, 1.0};
  double temporal_constraint_probability = 0.5;
  std::size_t max_attempts_per_query = 100;
  std::uint64_t rng_seed = 0;
  GraphModel model = GraphModel::reified;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Relations of a sub-graph before variables are attached, in insertion order
/// (seed first).
struct SubGraph {
  std::vector<RelationIndex> relations;
};

/// Query generation pipeline over one immutable graph: query type, event, seed
/// relation, random-walk extension, variable allocation, temporal constraint.
/// Const member functions are safe to call concurrently.
class Generator {
 public:
  /// Throws InvalidConfig.
  Generator(const KnowledgeGraph& kg, GeneratorConfig config);

  [[nodiscard]] const GeneratorConfig& config() const noexcept { return config_; }

  QueryType select_query_type(RngStream& rng) const;
  /// Throws EmptyEventSet.
  NodeIndex sample_event(RngStream& rng) const;
  /// Uniform among node-node relations of the event that have an endpoint of walk
  /// degree >= 2 and no blank endpoint. Throws NoEligibleSeed.
  RelationIndex select_seed_relation(NodeIndex event, RngStream& rng) const;
  /// Grows the seed to `max_relations` distinct relations: pick a sub-graph node, then
  /// one of its walkable relations; repeats are skipped. Throws WalkStuck.
  SubGraph random_walk_extend(RelationIndex seed, RngStream& rng, std::size_t max_relations) const;
  /// Attaches at most one variable (none for ASK). Eligible positions are non-leaf
  /// vertices, excluding literals that repeat an adjacent label and, for COUNT,
  /// temporal literals. Throws NoEligibleVariable.
  QueryGraph allocate_variable(const SubGraph& sub, QueryType type, RngStream& rng) const;
  /// With probability p, and when the sub-graph reaches a temporal fact, constrains it
  /// within/after/before its own interval.
  SemanticQuery add_temporal_constraint(QueryGraph graph, QueryType type, const SubGraph& sub,
                                        RngStream& rng, double p) const;

  /// One pipeline run on stream `stream_index`, retried up to max_attempts_per_query.
  /// Throws GenerationExhausted.
  SemanticQuery generate_query(std::uint64_t stream_index) const;
  /// n queries from streams 0..n-1; queries whose element set repeats an earlier one
  /// are replaced from streams n, n+1, ... Output does not depend on `jobs`.
  /// Throws GenerationExhausted, InvalidConfig.
  std::vector<SemanticQuery> generate_dataset(std::size_t n, unsigned jobs = 1) const;

 private:
  QueryTerm term_for_node(NodeIndex n) const;

  const KnowledgeGraph& kg_;
  GeneratorConfig config_;
  std::vector<std::vector<RelationIndex>> walkable_;
};

SemanticQuery generate_query(const KnowledgeGraph& kg, const GeneratorConfig& config,
                             std::uint64_t stream_index);
std::vector<SemanticQuery> generate_dataset(const KnowledgeGraph& kg, std::size_t n,
                                            const GeneratorConfig& config, unsigned jobs = 1);

}  // namespace eventqa
