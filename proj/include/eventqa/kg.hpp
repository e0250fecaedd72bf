#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/schema.hpp"
#include "eventqa/term.hpp"

namespace eventqa {

using NodeIndex = std::uint32_t;
using RelationIndex = std::uint32_t;
using LiteralIndex = std::uint32_t;

enum class NodeKind : std::uint8_t { event, entity };
enum class Provenance : std::uint8_t { reified, direct };

class DanglingReification : public DataError {
 public:
  explicit DanglingReification(std::string statement);
  [[nodiscard]] const std::string& statement() const noexcept { return statement_; }

 private:
  std::string statement_;
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(std::string iri) : Error("unknown node: " + iri) {}
};

/// Object of a relation: a node or an interned literal.
struct ObjectRef {
  bool is_literal = false;
  std::uint32_t index = 0;

  auto operator<=>(const ObjectRef&) const = default;
};

struct Relation {
  /// Statement-node IRI for reified relations, `urn:eventqa:relation:<fnv64>` otherwise.
  std::string id;
  NodeIndex subject = 0;
  std::string predicate;
  ObjectRef object;
  std::optional<Literal> valid_from;
  std::optional<Literal> valid_to;
  Provenance provenance = Provenance::direct;

  bool operator==(const Relation&) const = default;
};

struct Node {
  std::string iri;  // blank nodes keep "_:label"
  NodeKind kind = NodeKind::entity;
  bool blank = false;
  std::vector<std::string> types;                         // sorted, unique
  std::vector<std::string> same_as;                       // sorted, unique
  std::vector<std::pair<std::string, std::string>> labels;  // (lang, text), sorted

  bool operator==(const Node&) const = default;
};

/// Immutable labelled multi-graph: events and entities, node-node relations and
/// node-literal relations, with adjacency and predicate indexes.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  [[nodiscard]] const SchemaConfig& schema() const noexcept { return schema_; }

  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] const Node& node(NodeIndex n) const { return nodes_.at(n); }
  [[nodiscard]] const std::string& iri(NodeIndex n) const { return nodes_.at(n).iri; }
  [[nodiscard]] bool is_event(NodeIndex n) const { return nodes_.at(n).kind == NodeKind::event; }
  [[nodiscard]] std::optional<NodeIndex> find_node(std::string_view iri) const;
  /// Nodes declaring `owl:sameAs external` (or the configured same-as predicate).
  [[nodiscard]] std::span<const NodeIndex> nodes_same_as(std::string_view external) const;

  [[nodiscard]] std::span<const NodeIndex> events() const noexcept { return events_; }
  [[nodiscard]] std::span<const NodeIndex> entities() const noexcept { return entities_; }

  [[nodiscard]] std::size_t relation_count() const noexcept { return relations_.size(); }
  [[nodiscard]] const Relation& relation(RelationIndex r) const { return relations_.at(r); }
  [[nodiscard]] std::span<const Relation> relations() const noexcept { return relations_; }
  [[nodiscard]] std::span<const RelationIndex> node_relations() const noexcept {
    return node_relations_;
  }
  [[nodiscard]] std::span<const RelationIndex> literal_relations() const noexcept {
    return literal_relations_;
  }
  [[nodiscard]] std::optional<RelationIndex> find_relation(std::string_view id) const;

  /// Relations where the node is subject or object, ascending relation id.
  [[nodiscard]] std::span<const RelationIndex> incident(NodeIndex n) const {
    return incident_.at(n);
  }
  [[nodiscard]] std::span<const RelationIndex> outgoing(NodeIndex n) const {
    return outgoing_.at(n);
  }
  [[nodiscard]] std::span<const RelationIndex> incoming(NodeIndex n) const {
    return incoming_.at(n);
  }
  [[nodiscard]] std::span<const RelationIndex> with_predicate(std::string_view predicate) const;

  [[nodiscard]] std::size_t literal_count() const noexcept { return literals_.size(); }
  [[nodiscard]] const Literal& literal(LiteralIndex l) const { return literals_.at(l); }
  [[nodiscard]] std::optional<LiteralIndex> find_literal(const Literal& literal) const;

  /// First label for the language in lexicographic order.
  [[nodiscard]] std::optional<std::string> label(NodeIndex n, std::string_view lang) const;

  /// Whether the relation is a temporal node-literal fact (begin/end/year-style).
  [[nodiscard]] bool is_temporal_fact(const Relation& r) const;
  /// Relations a random walk may traverse: no blank endpoints, not temporal facts.
  [[nodiscard]] bool is_walkable(const Relation& r) const;

  /// FNV-1a digest of the ingested statements, in input order.
  [[nodiscard]] const std::string& digest() const noexcept { return digest_; }
  [[nodiscard]] std::size_t triple_count() const noexcept { return triple_count_; }

  /// Renders an object as an RDF term (IRI/blank node or literal).
  [[nodiscard]] Term object_term(const Relation& r) const;
  [[nodiscard]] Term node_term(NodeIndex n) const;

 private:
  friend class GraphBuilder;

  SchemaConfig schema_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeIndex> node_by_iri_;
  std::unordered_map<std::string, std::vector<NodeIndex>> nodes_by_same_as_;
  std::vector<NodeIndex> events_;
  std::vector<NodeIndex> entities_;
  std::vector<Relation> relations_;
  std::unordered_map<std::string, RelationIndex> relation_by_id_;
  std::vector<RelationIndex> node_relations_;
  std::vector<RelationIndex> literal_relations_;
  std::vector<std::vector<RelationIndex>> incident_;
  std::vector<std::vector<RelationIndex>> outgoing_;
  std::vector<std::vector<RelationIndex>> incoming_;
  std::unordered_map<std::string, std::vector<RelationIndex>> by_predicate_;
  std::vector<Literal> literals_;
  std::map<Literal, LiteralIndex> literal_index_;
  std::string digest_;
  std::size_t triple_count_ = 0;
};

/// Accumulates statements, then folds them into a KnowledgeGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(SchemaConfig schema);

  void add(Triple triple);
  /// Throws DanglingReification.
  [[nodiscard]] KnowledgeGraph build() &&;

 private:
  SchemaConfig schema_;
  std::vector<Triple> triples_;
};

/// Throws DanglingReification, SchemaConfigError.
KnowledgeGraph build_graph(std::span<const Triple> triples, const SchemaConfig& schema);

/// Relations touching the node, ascending relation id. Throws UnknownNode.
std::vector<Relation> relations_of(const KnowledgeGraph& kg, std::string_view node_iri);

/// Re-scans every relation and checks the adjacency lists list exactly the
/// relations touching each node. Returns a description of the first violation.
std::optional<std::string> check_adjacency(const KnowledgeGraph& kg);

}  // namespace eventqa
