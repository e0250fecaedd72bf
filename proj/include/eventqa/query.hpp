#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/kg.hpp"
#include "eventqa/term.hpp"

namespace eventqa {

enum class QueryType : std::uint8_t { ask, select, count };
enum class GraphModel : std::uint8_t { reified, direct };
enum class TemporalMode : std::uint8_t { within, after, before };

std::string_view to_string(QueryType type);
std::string_view to_string(GraphModel model);
std::string_view to_string(TemporalMode mode);
std::optional<QueryType> parse_query_type(std::string_view text);
std::optional<GraphModel> parse_graph_model(std::string_view text);

class InvalidQuery : public Error {
 public:
  using Error::Error;
};

/// A position in a triple pattern: a variable, a concrete node, or a literal.
struct QueryTerm {
  enum class Kind : std::uint8_t { variable, node, literal };

  Kind kind = Kind::node;
  std::string value;  // variable name (no '?'), node IRI, or literal lexical form
  std::string datatype;
  std::string language;
  /// Node identified through an owl:sameAs bridge to `value` rather than by its own IRI.
  bool via_same_as = false;

  static QueryTerm variable(std::string name) { return {Kind::variable, std::move(name), {}, {}, false}; }
  static QueryTerm node(std::string iri, bool via_same_as = false) {
    return {Kind::node, std::move(iri), {}, {}, via_same_as};
  }
  static QueryTerm literal(Literal lit) {
    return {Kind::literal, std::move(lit.lexical), std::move(lit.datatype), std::move(lit.language), false};
  }

  [[nodiscard]] bool is_variable() const noexcept { return kind == Kind::variable; }
  [[nodiscard]] bool is_node() const noexcept { return kind == Kind::node; }
  [[nodiscard]] bool is_literal() const noexcept { return kind == Kind::literal; }
  [[nodiscard]] Literal as_literal() const { return {value, datatype, language}; }

  auto operator<=>(const QueryTerm&) const = default;
};

struct QueryRelation {
  QueryTerm subject;
  std::string predicate;  // empty when the role type is left open
  QueryTerm object;
  Provenance provenance = Provenance::direct;
  /// Id of the KG relation this pattern was sampled from (generation provenance only).
  std::string source_id;

  [[nodiscard]] bool same_pattern(const QueryRelation& other) const {
    return subject == other.subject && predicate == other.predicate && object == other.object &&
           provenance == other.provenance;
  }
};

enum class VariableRole : std::uint8_t { node, literal };

struct Variable {
  std::string name;
  /// rdf:type constraint emitted as a typing pattern; empty for none.
  std::string type;
  // Generation provenance, not carried by query text.
  VariableRole role = VariableRole::node;
  std::string bound_to;
};

struct TemporalConstraint {
  /// Anchor is the validity time of graph.relations[*relation] (reified relations only).
  std::optional<std::size_t> relation;
  /// Otherwise the anchor is this node term (a variable or a concrete node).
  QueryTerm term;
  std::string predicate;  // temporal predicate read on the anchor
  std::string variable;   // fresh filter variable
  TemporalMode mode = TemporalMode::within;
  std::optional<Literal> lower;  // within: start (inclusive); after: exclusive bound
  std::optional<Literal> upper;  // within: end (inclusive); before: exclusive bound

  bool operator==(const TemporalConstraint&) const = default;
};

struct QueryGraph {
  std::vector<QueryRelation> relations;
  std::vector<Variable> variables;

  /// Concrete node IRIs, ascending.
  [[nodiscard]] std::vector<std::string> nodes() const;
  [[nodiscard]] std::vector<Literal> literals() const;
  [[nodiscard]] const Variable* find_variable(std::string_view name) const;
};

/// RNG decisions that produced a query.
struct SeedTrace {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint32_t attempts = 0;
  std::string event;
  std::string seed_relation;
  std::vector<std::string> walk;
  std::string variable;
  std::string anchor;

  [[nodiscard]] std::string digest() const;
  bool operator==(const SeedTrace&) const = default;
};

struct SemanticQuery {
  QueryGraph graph;
  QueryType type = QueryType::ask;
  std::optional<TemporalConstraint> constraint;
  GraphModel model = GraphModel::direct;
  SeedTrace trace;
};

/// Sorts relations by (predicate, subject, object, provenance), remaps the constraint
/// anchor, then validates. Throws InvalidQuery.
SemanticQuery make_query(QueryGraph graph, QueryType type,
                         std::optional<TemporalConstraint> constraint, GraphModel model,
                         SeedTrace trace = {});

void canonicalize(SemanticQuery& q);

/// Checks the variable rules (ASK: none, SELECT/COUNT: exactly one), variable usage,
/// connectivity and constraint shape. Throws InvalidQuery.
void validate(const SemanticQuery& q);

[[nodiscard]] bool is_connected(const QueryGraph& graph);

/// Number of (term, degree) vertices of the undirected query graph.
struct Vertex {
  QueryTerm term;
  std::size_t degree = 0;
};
[[nodiscard]] std::vector<Vertex> vertices(const QueryGraph& graph);

/// Equality of everything query text carries: type, model, patterns, variable names and
/// types, constraint. Generation provenance is ignored.
[[nodiscard]] bool structurally_equal(const SemanticQuery& a, const SemanticQuery& b);

/// Relations of the query graph; the temporal constraint's support pattern is not one.
[[nodiscard]] std::size_t relation_count(const SemanticQuery& q);

/// Concrete node IRIs, predicate IRIs and literal lexical forms. Variables excluded.
[[nodiscard]] std::set<std::string> element_set(const SemanticQuery& q);

/// Same query without its temporal constraint.
[[nodiscard]] SemanticQuery strip_constraint(SemanticQuery q);

/// Whether a concrete node or a variable's bound_to is an event of the graph.
/// Concrete nodes identified through owl:sameAs are resolved via the graph.
[[nodiscard]] bool contains_event(const SemanticQuery& q, const KnowledgeGraph& kg);

}  // namespace eventqa
