#include "eventqa/query.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "eventqa/digest.hpp"

namespace eventqa {

std::string_view to_string(QueryType type) {
  switch (type) {
    case QueryType::ask: return "ASK";
    case QueryType::select: return "SELECT";
    case QueryType::count: return "COUNT";
  }
  return "?";
}

std::string_view to_string(GraphModel model) {
  return model == GraphModel::reified ? "reified" : "direct";
}

std::string_view to_string(TemporalMode mode) {
  switch (mode) {
    case TemporalMode::within: return "within";
    case TemporalMode::after: return "after";
    case TemporalMode::before: return "before";
  }
  return "?";
}

std::optional<QueryType> parse_query_type(std::string_view text) {
  if (text == "ASK" || text == "ask") return QueryType::ask;
  if (text == "SELECT" || text == "select") return QueryType::select;
  if (text == "COUNT" || text == "count") return QueryType::count;
  return std::nullopt;
}

std::optional<GraphModel> parse_graph_model(std::string_view text) {
  if (text == "reified") return GraphModel::reified;
  if (text == "direct") return GraphModel::direct;
  return std::nullopt;
}

std::vector<std::string> QueryGraph::nodes() const {
  std::set<std::string> out;
  for (const auto& r : relations) {
    if (r.subject.is_node()) out.insert(r.subject.value);
    if (r.object.is_node()) out.insert(r.object.value);
  }
  return {out.begin(), out.end()};
}

std::vector<Literal> QueryGraph::literals() const {
  std::set<Literal> out;
  for (const auto& r : relations) {
    if (r.object.is_literal()) out.insert(r.object.as_literal());
  }
  return {out.begin(), out.end()};
}

const Variable* QueryGraph::find_variable(std::string_view name) const {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::string SeedTrace::digest() const {
  Fnv1a h;
  h.update(std::to_string(seed)).separator().update(std::to_string(stream)).separator();
  h.update(std::to_string(attempts)).separator().update(event).separator().update(seed_relation);
  for (const auto& w : walk) h.separator().update(w);
  h.separator().update(variable).separator().update(anchor);
  return h.hex();
}

namespace {

auto pattern_key(const QueryRelation& r) {
  return std::tie(r.predicate, r.subject, r.object, r.provenance);
}

}  // namespace

void canonicalize(SemanticQuery& q) {
  auto& rels = q.graph.relations;
  std::vector<std::size_t> order(rels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pattern_key(rels[a]) < pattern_key(rels[b]);
  });
  std::vector<QueryRelation> sorted;
  sorted.reserve(rels.size());
  std::vector<std::size_t> new_position(rels.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_position[order[i]] = i;
    sorted.push_back(std::move(rels[order[i]]));
  }
  rels = std::move(sorted);
  if (q.constraint && q.constraint->relation && *q.constraint->relation < new_position.size()) {
    q.constraint->relation = new_position[*q.constraint->relation];
  }
}

std::vector<Vertex> vertices(const QueryGraph& graph) {
  std::map<QueryTerm, std::size_t> degree;
  for (const auto& r : graph.relations) {
    ++degree[r.subject];
    ++degree[r.object];
  }
  std::vector<Vertex> out;
  out.reserve(degree.size());
  for (auto& [term, d] : degree) out.push_back({term, d});
  return out;
}

bool is_connected(const QueryGraph& graph) {
  if (graph.relations.empty()) return true;
  std::map<QueryTerm, std::size_t> id;
  for (const auto& r : graph.relations) {
    id.emplace(r.subject, id.size());
    id.emplace(r.object, id.size());
  }
  std::vector<std::size_t> parent(id.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : graph.relations) parent[find(id[r.subject])] = find(id[r.object]);
  const auto root = find(0);
  for (std::size_t i = 1; i < parent.size(); ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

void validate(const SemanticQuery& q) {
  const auto& vars = q.graph.variables;
  if (q.type == QueryType::ask && !vars.empty()) {
    throw InvalidQuery("ASK queries carry no variables");
  }
  if (q.type != QueryType::ask && vars.size() != 1) {
    throw InvalidQuery(std::string(to_string(q.type)) + " queries carry exactly one variable");
  }
  for (const auto& v : vars) {
    if (v.name.empty()) throw InvalidQuery("variable without a name");
    const bool used = std::any_of(q.graph.relations.begin(), q.graph.relations.end(), [&](const auto& r) {
      return (r.subject.is_variable() && r.subject.value == v.name) ||
             (r.object.is_variable() && r.object.value == v.name);
    });
    if (!used) throw InvalidQuery("variable ?" + v.name + " does not occur in any pattern");
  }
  for (const auto& r : q.graph.relations) {
    for (const auto* t : {&r.subject, &r.object}) {
      if (t->is_variable() && q.graph.find_variable(t->value) == nullptr) {
        throw InvalidQuery("undeclared variable ?" + t->value);
      }
    }
    if (r.subject.is_literal()) throw InvalidQuery("literal in subject position");
  }
  if (!is_connected(q.graph)) throw InvalidQuery("query graph is not connected");
  if (q.constraint) {
    const auto& c = *q.constraint;
    if (c.predicate.empty() || c.variable.empty()) {
      throw InvalidQuery("temporal constraint needs a predicate and a filter variable");
    }
    if (q.graph.find_variable(c.variable) != nullptr) {
      throw InvalidQuery("filter variable ?" + c.variable + " clashes with a query variable");
    }
    switch (c.mode) {
      case TemporalMode::within:
        if (!c.lower || !c.upper) throw InvalidQuery("within needs both bounds");
        break;
      case TemporalMode::after:
        if (!c.lower || c.upper) throw InvalidQuery("after takes only a lower bound");
        break;
      case TemporalMode::before:
        if (c.lower || !c.upper) throw InvalidQuery("before takes only an upper bound");
        break;
    }
    if (c.relation) {
      if (*c.relation >= q.graph.relations.size()) throw InvalidQuery("constraint anchor out of range");
      if (q.graph.relations[*c.relation].provenance != Provenance::reified) {
        throw InvalidQuery("relation validity anchors need a reified relation");
      }
    } else if (c.term.is_variable()) {
      if (q.graph.find_variable(c.term.value) == nullptr) {
        throw InvalidQuery("constraint anchored on undeclared ?" + c.term.value);
      }
    } else if (!c.term.is_node()) {
      throw InvalidQuery("constraint anchor must be a node or a variable");
    }
  }
}

SemanticQuery make_query(QueryGraph graph, QueryType type, std::optional<TemporalConstraint> constraint,
                         GraphModel model, SeedTrace trace) {
  SemanticQuery q{std::move(graph), type, std::move(constraint), model, std::move(trace)};
  canonicalize(q);
  validate(q);
  return q;
}

bool structurally_equal(const SemanticQuery& a, const SemanticQuery& b) {
  if (a.type != b.type || a.model != b.model || a.constraint != b.constraint) return false;
  const auto& ra = a.graph.relations;
  const auto& rb = b.graph.relations;
  if (!std::equal(ra.begin(), ra.end(), rb.begin(), rb.end(),
                  [](const auto& x, const auto& y) { return x.same_pattern(y); })) {
    return false;
  }
  const auto& va = a.graph.variables;
  const auto& vb = b.graph.variables;
  return std::equal(va.begin(), va.end(), vb.begin(), vb.end(), [](const auto& x, const auto& y) {
    return x.name == y.name && x.type == y.type;
  });
}

std::size_t relation_count(const SemanticQuery& q) { return q.graph.relations.size(); }

std::set<std::string> element_set(const SemanticQuery& q) {
  std::set<std::string> out;
  for (const auto& r : q.graph.relations) {
    if (!r.predicate.empty()) out.insert(r.predicate);
    for (const auto* t : {&r.subject, &r.object}) {
      if (!t->is_variable()) out.insert(t->value);
    }
  }
  return out;
}

SemanticQuery strip_constraint(SemanticQuery q) {
  q.constraint.reset();
  return q;
}

bool contains_event(const SemanticQuery& q, const KnowledgeGraph& kg) {
  auto is_event_iri = [&](const std::string& iri, bool via_same_as) {
    if (via_same_as) {
      for (auto n : kg.nodes_same_as(iri)) {
        if (kg.is_event(n)) return true;
      }
      return false;
    }
    auto n = kg.find_node(iri);
    return n && kg.is_event(*n);
  };
  for (const auto& r : q.graph.relations) {
    for (const auto* t : {&r.subject, &r.object}) {
      if (t->is_node() && is_event_iri(t->value, t->via_same_as)) return true;
    }
  }
  for (const auto& v : q.graph.variables) {
    if (v.role == VariableRole::node && !v.bound_to.empty() && is_event_iri(v.bound_to, false)) {
      return true;
    }
  }
  return false;
}

}  // namespace eventqa
