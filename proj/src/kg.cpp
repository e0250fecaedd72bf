#include "eventqa/kg.hpp"

#include <algorithm>
#include <set>

#include "eventqa/digest.hpp"
#include "eventqa/ntriples.hpp"

namespace eventqa {

DanglingReification::DanglingReification(std::string statement)
    : DataError("reified statement " + statement +
                " lacks a subject, object, or role type"),
      statement_(std::move(statement)) {}

namespace {

std::string node_key(const Term& t) { return t.is_blank() ? "_:" + t.value : t.value; }

struct PendingStatement {
  std::optional<Term> subject;
  std::optional<Term> object;
  std::optional<std::string> role;
  std::optional<Literal> valid_from;
  std::optional<Literal> valid_to;
};

struct PendingNode {
  bool blank = false;
  bool event = false;
  std::set<std::string> types;
  std::set<std::string> same_as;
  std::set<std::pair<std::string, std::string>> labels;
};

struct PendingRelation {
  std::string id;
  std::string subject;
  std::string predicate;
  Term object;
  std::optional<Literal> valid_from;
  std::optional<Literal> valid_to;
  Provenance provenance;
};

template <typename T>
void set_once(std::optional<T>& slot, T value, const std::string& statement, const char* what) {
  if (slot && *slot != value) {
    throw DataError("reified statement " + statement + " has conflicting " + what + " values");
  }
  slot = std::move(value);
}

}  // namespace

GraphBuilder::GraphBuilder(SchemaConfig schema) : schema_(std::move(schema)) {
  schema_.validate();
}

void GraphBuilder::add(Triple triple) { triples_.push_back(std::move(triple)); }

KnowledgeGraph GraphBuilder::build() && {
  KnowledgeGraph kg;
  kg.schema_ = schema_;
  const auto& schema = kg.schema_;

  Fnv1a digest;
  for (const auto& t : triples_) digest.update(to_ntriples(t)).update("\n");
  kg.digest_ = digest.hex();
  kg.triple_count_ = triples_.size();

  std::set<std::string> statements;
  if (schema.reified()) {
    for (const auto& t : triples_) {
      const auto& p = t.predicate.value;
      if (p == schema.reify_subject || p == schema.reify_object || p == schema.reify_role) {
        statements.insert(node_key(t.subject));
      }
    }
  }

  std::map<std::string, PendingNode> nodes;
  auto touch = [&](const Term& t) -> PendingNode& {
    auto& n = nodes[node_key(t)];
    n.blank = t.is_blank();
    return n;
  };
  std::map<std::string, PendingStatement> pending;
  std::vector<PendingRelation> direct;

  for (auto& t : triples_) {
    const auto key = node_key(t.subject);
    const auto& p = t.predicate.value;
    if (statements.count(key) != 0) {
      auto& st = pending[key];
      if (p == schema.reify_subject) {
        set_once(st.subject, t.object, key, "subject");
      } else if (p == schema.reify_object) {
        set_once(st.object, t.object, key, "object");
      } else if (p == schema.reify_role) {
        if (!t.object.is_iri()) throw DataError("role type of " + key + " must be an IRI");
        set_once(st.role, t.object.value, key, "role type");
      } else if (t.object.is_literal() && schema.is_begin_predicate(p)) {
        set_once(st.valid_from, t.object.literal(), key, "begin time");
      } else if (t.object.is_literal() && schema.is_end_predicate(p)) {
        set_once(st.valid_to, t.object.literal(), key, "end time");
      }
      continue;
    }
    if (schema.is_event_type_predicate(p) && t.object.is_iri()) {
      auto& n = touch(t.subject);
      n.types.insert(t.object.value);
      for (const auto& [tp, tv] : schema.event_types) {
        if (tp == p && tv == t.object.value) n.event = true;
      }
      continue;
    }
    if (schema.is_label_predicate(p) && t.object.is_literal()) {
      touch(t.subject).labels.emplace(t.object.language, t.object.value);
      continue;
    }
    if (!schema.same_as.empty() && p == schema.same_as && t.object.is_iri()) {
      touch(t.subject).same_as.insert(t.object.value);
      continue;
    }
    touch(t.subject);
    if (!t.object.is_literal()) touch(t.object);
    Fnv1a h;
    h.update(to_ntriples(t.subject)).separator().update(p).separator().update(to_ntriples(t.object));
    direct.push_back({"urn:eventqa:relation:" + h.hex(), key, p, std::move(t.object), {}, {},
                      Provenance::direct});
  }

  for (auto& [key, st] : pending) {
    if (!st.subject || !st.object || !st.role || st.subject->is_literal()) {
      throw DanglingReification(key);
    }
    touch(*st.subject);
    if (!st.object->is_literal()) touch(*st.object);
    direct.push_back({key, node_key(*st.subject), *st.role, std::move(*st.object),
                      std::move(st.valid_from), std::move(st.valid_to), Provenance::reified});
  }
  triples_.clear();

  // Nodes in IRI order.
  kg.nodes_.reserve(nodes.size());
  for (auto& [key, pn] : nodes) {
    Node n;
    n.iri = key;
    n.blank = pn.blank;
    n.kind = pn.event ? NodeKind::event : NodeKind::entity;
    n.types.assign(pn.types.begin(), pn.types.end());
    n.same_as.assign(pn.same_as.begin(), pn.same_as.end());
    n.labels.assign(pn.labels.begin(), pn.labels.end());
    const auto index = static_cast<NodeIndex>(kg.nodes_.size());
    kg.node_by_iri_.emplace(key, index);
    for (const auto& ext : n.same_as) kg.nodes_by_same_as_[ext].push_back(index);
    (n.kind == NodeKind::event ? kg.events_ : kg.entities_).push_back(index);
    kg.nodes_.push_back(std::move(n));
  }

  // Literals in value order.
  std::set<Literal> literal_set;
  for (const auto& r : direct) {
    if (r.object.is_literal()) literal_set.insert(r.object.literal());
  }
  for (const auto& lit : literal_set) {
    kg.literal_index_.emplace(lit, static_cast<LiteralIndex>(kg.literals_.size()));
    kg.literals_.push_back(lit);
  }

  // Relations in id order; identical direct triples collapse to one relation.
  std::sort(direct.begin(), direct.end(),
            [](const PendingRelation& a, const PendingRelation& b) { return a.id < b.id; });
  direct.erase(std::unique(direct.begin(), direct.end(),
                           [](const PendingRelation& a, const PendingRelation& b) {
                             return a.id == b.id;
                           }),
               direct.end());

  const auto node_count = kg.nodes_.size();
  kg.incident_.resize(node_count);
  kg.outgoing_.resize(node_count);
  kg.incoming_.resize(node_count);
  kg.relations_.reserve(direct.size());
  for (auto& pr : direct) {
    Relation r;
    r.id = std::move(pr.id);
    r.subject = kg.node_by_iri_.at(pr.subject);
    r.predicate = std::move(pr.predicate);
    if (pr.object.is_literal()) {
      r.object = {true, kg.literal_index_.at(pr.object.literal())};
    } else {
      r.object = {false, kg.node_by_iri_.at(node_key(pr.object))};
    }
    r.valid_from = std::move(pr.valid_from);
    r.valid_to = std::move(pr.valid_to);
    r.provenance = pr.provenance;

    const auto index = static_cast<RelationIndex>(kg.relations_.size());
    kg.relation_by_id_.emplace(r.id, index);
    kg.by_predicate_[r.predicate].push_back(index);
    kg.outgoing_[r.subject].push_back(index);
    kg.incident_[r.subject].push_back(index);
    if (r.object.is_literal) {
      kg.literal_relations_.push_back(index);
    } else {
      kg.node_relations_.push_back(index);
      kg.incoming_[r.object.index].push_back(index);
      if (r.object.index != r.subject) kg.incident_[r.object.index].push_back(index);
    }
    kg.relations_.push_back(std::move(r));
  }
  return kg;
}

KnowledgeGraph build_graph(std::span<const Triple> triples, const SchemaConfig& schema) {
  GraphBuilder builder(schema);
  for (const auto& t : triples) builder.add(t);
  return std::move(builder).build();
}

std::optional<NodeIndex> KnowledgeGraph::find_node(std::string_view iri) const {
  auto it = node_by_iri_.find(std::string(iri));
  if (it == node_by_iri_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeIndex> KnowledgeGraph::nodes_same_as(std::string_view external) const {
  auto it = nodes_by_same_as_.find(std::string(external));
  if (it == nodes_by_same_as_.end()) return {};
  return it->second;
}

std::optional<RelationIndex> KnowledgeGraph::find_relation(std::string_view id) const {
  auto it = relation_by_id_.find(std::string(id));
  if (it == relation_by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const RelationIndex> KnowledgeGraph::with_predicate(std::string_view predicate) const {
  auto it = by_predicate_.find(std::string(predicate));
  if (it == by_predicate_.end()) return {};
  return it->second;
}

std::optional<LiteralIndex> KnowledgeGraph::find_literal(const Literal& literal) const {
  auto it = literal_index_.find(literal);
  if (it == literal_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> KnowledgeGraph::label(NodeIndex n, std::string_view lang) const {
  for (const auto& [l, text] : nodes_.at(n).labels) {
    if (l == lang) return text;
  }
  return std::nullopt;
}

bool KnowledgeGraph::is_temporal_fact(const Relation& r) const {
  return r.object.is_literal && schema_.is_temporal_predicate(r.predicate);
}

bool KnowledgeGraph::is_walkable(const Relation& r) const {
  if (is_temporal_fact(r)) return false;
  if (nodes_[r.subject].blank) return false;
  return r.object.is_literal || !nodes_[r.object.index].blank;
}

Term KnowledgeGraph::node_term(NodeIndex n) const {
  const auto& node = nodes_.at(n);
  if (node.blank) return Term::make_blank(node.iri.substr(2));
  return Term::make_iri(node.iri);
}

Term KnowledgeGraph::object_term(const Relation& r) const {
  if (r.object.is_literal) return Term::make_literal(literals_.at(r.object.index));
  return node_term(r.object.index);
}

std::vector<Relation> relations_of(const KnowledgeGraph& kg, std::string_view node_iri) {
  auto n = kg.find_node(node_iri);
  if (!n) throw UnknownNode(std::string(node_iri));
  std::vector<Relation> out;
  for (auto r : kg.incident(*n)) out.push_back(kg.relation(r));
  return out;
}

std::optional<std::string> check_adjacency(const KnowledgeGraph& kg) {
  std::vector<std::vector<RelationIndex>> expected(kg.node_count());
  for (RelationIndex r = 0; r < kg.relation_count(); ++r) {
    const auto& rel = kg.relation(r);
    expected[rel.subject].push_back(r);
    if (!rel.object.is_literal && rel.object.index != rel.subject) {
      expected[rel.object.index].push_back(r);
    }
  }
  for (NodeIndex n = 0; n < kg.node_count(); ++n) {
    auto actual = kg.incident(n);
    if (!std::equal(actual.begin(), actual.end(), expected[n].begin(), expected[n].end())) {
      return "adjacency of " + kg.iri(n) + " differs from a full re-scan";
    }
    for (std::size_t i = 1; i < actual.size(); ++i) {
      if (kg.relation(actual[i - 1]).id >= kg.relation(actual[i]).id) {
        return "adjacency of " + kg.iri(n) + " is not in relation-id order";
      }
    }
  }
  return std::nullopt;
}

}  // namespace eventqa
