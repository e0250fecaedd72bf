#include "eventqa/evaluator.hpp"

#include <algorithm>
#include <optional>
#include <map>
#include <set>

namespace eventqa {

bool passes_filter(const TemporalConstraint& c, const Literal& value) {
  auto bound = [](const std::optional<Literal>& lit) -> std::optional<TemporalValue> {
    if (!lit) return std::nullopt;
    auto t = parse_temporal(*lit);
    if (!t) throw TypeMismatch("FILTER bound \"" + lit->lexical + "\" is not a temporal literal");
    return t;
  };
  const auto lower = bound(c.lower);
  const auto upper = bound(c.upper);
  const auto v = parse_temporal(value);
  if (!v) return false;
  switch (c.mode) {
    case TemporalMode::within: return v->first_day >= lower->first_day && v->last_day <= upper->last_day;
    case TemporalMode::after: return v->first_day > lower->last_day;
    case TemporalMode::before: return v->last_day < upper->first_day;
  }
  return false;
}

namespace {

// A node or an interned literal.
struct Value {
  bool literal = false;
  std::uint32_t index = 0;
  auto operator<=>(const Value&) const = default;
};

Value subject_of(const Relation& r) { return {false, r.subject}; }
Value object_of(const Relation& r) { return {r.object.is_literal, r.object.index}; }

bool provenance_matches(const SemanticQuery& q, const QueryRelation& p, const Relation& r) {
  if (q.model == GraphModel::direct) return true;
  return p.provenance == r.provenance;
}

std::optional<Literal> validity(const KnowledgeGraph& kg, const Relation& r, const std::string& predicate) {
  if (kg.schema().is_begin_predicate(predicate)) return r.valid_from;
  if (kg.schema().is_end_predicate(predicate)) return r.valid_to;
  return std::nullopt;
}

AnswerSet finish(const KnowledgeGraph& kg, const SemanticQuery& q, bool satisfied, const std::set<Value>& values) {
  AnswerSet a;
  a.kind = q.type;
  if (q.type == QueryType::ask) {
    a.boolean = satisfied;
    return a;
  }
  a.variable = q.graph.variables.front().name;
  for (auto v : values) {
    a.bindings.push_back(v.literal ? Term::make_literal(kg.literal(v.index)) : kg.node_term(v.index));
  }
  std::sort(a.bindings.begin(), a.bindings.end());
  a.bindings.erase(std::unique(a.bindings.begin(), a.bindings.end()), a.bindings.end());
  a.count = a.bindings.size();
  if (q.type == QueryType::count) a.bindings.clear();
  return a;
}

// Per-pattern result: the variable's candidate values, or plain satisfiability.
struct Outcome {
  bool satisfied = false;
  bool has_var = false;
  std::set<Value> values;
};

class IndexedEvaluator {
 public:
  IndexedEvaluator(const KnowledgeGraph& kg, const SemanticQuery& q) : kg_(kg), q_(q) {
    // Surfaces a bad bound even when no candidate reaches the filter.
    if (q.constraint) passes_filter(*q.constraint, Literal{"1970", "", ""});
  }

  AnswerSet run() const {
    std::vector<Outcome> outcomes;
    for (std::size_t i = 0; i < q_.graph.relations.size(); ++i) outcomes.push_back(match(i));
    if (q_.constraint && !q_.constraint->relation) outcomes.push_back(match_node_anchor());
    for (const auto& v : q_.graph.variables) {
      if (v.type.empty()) continue;
      Outcome typed;
      typed.has_var = true;
      for (NodeIndex n = 0; n < kg_.node_count(); ++n) {
        if (std::binary_search(kg_.node(n).types.begin(), kg_.node(n).types.end(), v.type)) {
          typed.values.insert({false, n});
        }
      }
      outcomes.push_back(std::move(typed));
    }

    const bool satisfied = std::all_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) {
      return o.has_var ? !o.values.empty() : o.satisfied;
    });
    std::vector<const Outcome*> joined;
    for (const auto& o : outcomes) {
      if (o.has_var) joined.push_back(&o);
    }
    std::sort(joined.begin(), joined.end(),
              [](const Outcome* a, const Outcome* b) { return a->values.size() < b->values.size(); });
    std::set<Value> values;
    if (satisfied && !joined.empty()) {
      values = joined.front()->values;
      for (std::size_t k = 1; k < joined.size(); ++k) {
        std::erase_if(values, [&](const Value& v) { return !joined[k]->values.contains(v); });
      }
    }
    return finish(kg_, q_, satisfied && (joined.empty() || !values.empty()), values);
  }

 private:
  struct Candidates {
    bool variable = false;
    std::vector<Value> fixed;
  };

  Candidates resolve(const QueryTerm& t) const {
    Candidates c;
    switch (t.kind) {
      case QueryTerm::Kind::variable: c.variable = true; break;
      case QueryTerm::Kind::literal:
        if (auto l = kg_.find_literal(t.as_literal())) c.fixed.push_back({true, *l});
        break;
      case QueryTerm::Kind::node:
        if (t.via_same_as) {
          for (auto n : kg_.nodes_same_as(t.value)) c.fixed.push_back({false, n});
        } else if (auto n = kg_.find_node(t.value)) {
          c.fixed.push_back({false, *n});
        }
        break;
    }
    return c;
  }

  template <class Visit>
  void scan(const QueryRelation& p, const Candidates& s, const Candidates& o, Visit visit) const {
    auto consider = [&](RelationIndex ri) {
      const auto& r = kg_.relation(ri);
      if (!p.predicate.empty() && r.predicate != p.predicate) return;
      if (!provenance_matches(q_, p, r)) return;
      const auto sv = subject_of(r);
      const auto ov = object_of(r);
      if (!s.variable && std::find(s.fixed.begin(), s.fixed.end(), sv) == s.fixed.end()) return;
      if (!o.variable && std::find(o.fixed.begin(), o.fixed.end(), ov) == o.fixed.end()) return;
      if (s.variable && o.variable && sv != ov) return;
      visit(ri, sv, ov);
    };
    const bool object_nodes =
        std::none_of(o.fixed.begin(), o.fixed.end(), [](Value v) { return v.literal; });
    if (!s.variable) {
      for (auto v : s.fixed) {
        for (auto ri : kg_.outgoing(v.index)) consider(ri);
      }
    } else if (!o.variable && object_nodes) {
      for (auto v : o.fixed) {
        for (auto ri : kg_.incoming(v.index)) consider(ri);
      }
    } else if (!p.predicate.empty()) {
      for (auto ri : kg_.with_predicate(p.predicate)) consider(ri);
    } else {
      for (RelationIndex ri = 0; ri < kg_.relation_count(); ++ri) consider(ri);
    }
  }

  Outcome match(std::size_t i) const {
    const auto& p = q_.graph.relations[i];
    const auto s = resolve(p.subject);
    const auto o = resolve(p.object);
    const bool anchored = q_.constraint && q_.constraint->relation == i;
    Outcome out;
    out.has_var = s.variable || o.variable;
    scan(p, s, o, [&](RelationIndex ri, Value sv, Value ov) {
      if (anchored) {
        auto t = validity(kg_, kg_.relation(ri), q_.constraint->predicate);
        if (!t || !passes_filter(*q_.constraint, *t)) return;
      }
      out.satisfied = true;
      if (s.variable) {
        out.values.insert(sv);
      } else if (o.variable) {
        out.values.insert(ov);
      }
    });
    return out;
  }

  Outcome match_node_anchor() const {
    const auto& c = *q_.constraint;
    const auto anchor = resolve(c.term);
    Outcome out;
    out.has_var = anchor.variable;
    for (auto ri : kg_.with_predicate(c.predicate)) {
      const auto& r = kg_.relation(ri);
      if (!r.object.is_literal || !passes_filter(c, kg_.literal(r.object.index))) continue;
      const Value sv = subject_of(r);
      if (anchor.variable) {
        out.values.insert(sv);
      } else if (std::find(anchor.fixed.begin(), anchor.fixed.end(), sv) != anchor.fixed.end()) {
        out.satisfied = true;
      }
    }
    return out;
  }

  const KnowledgeGraph& kg_;
  const SemanticQuery& q_;
};

// Relation rendered as strings, so the oracle never consults graph indexes.
struct FlatRelation {
  std::string subject;
  std::string predicate;
  bool object_literal = false;
  std::string object;  // IRI, or literal lexical form
  Literal object_value;
  Provenance provenance = Provenance::direct;
  std::optional<Literal> valid_from;
  std::optional<Literal> valid_to;
};

class BruteForce {
 public:
  BruteForce(const KnowledgeGraph& kg, const SemanticQuery& q) : kg_(kg), q_(q) {
    for (const auto& r : kg.relations()) {
      FlatRelation f;
      f.subject = kg.iri(r.subject);
      f.predicate = r.predicate;
      f.object_literal = r.object.is_literal;
      if (r.object.is_literal) {
        f.object_value = kg.literal(r.object.index);
      } else {
        f.object = kg.iri(r.object.index);
      }
      f.provenance = r.provenance;
      f.valid_from = r.valid_from;
      f.valid_to = r.valid_to;
      flat_.push_back(std::move(f));
    }
    for (NodeIndex n = 0; n < kg.node_count(); ++n) {
      for (const auto& alias : kg.node(n).same_as) aliases_.emplace(kg.iri(n), alias);
    }
  }

  AnswerSet run() const {
    if (q_.constraint) passes_filter(*q_.constraint, Literal{"1970", "", ""});
    std::set<Value> values;
    if (q_.graph.variables.empty()) {
      return finish(kg_, q_, holds(std::nullopt), values);
    }
    for (NodeIndex n = 0; n < kg_.node_count(); ++n) {
      if (holds(Value{false, n})) values.insert({false, n});
    }
    for (LiteralIndex l = 0; l < kg_.literal_count(); ++l) {
      if (holds(Value{true, l})) values.insert({true, l});
    }
    return finish(kg_, q_, !values.empty(), values);
  }

 private:
  // Whether the flat term (IRI or literal) equals the query term under `binding`.
  bool same(const QueryTerm& t, const std::optional<Value>& binding, bool is_literal, const std::string& iri,
            const Literal& lit) const {
    switch (t.kind) {
      case QueryTerm::Kind::variable:
        if (!binding || binding->literal != is_literal) return false;
        return is_literal ? kg_.literal(binding->index) == lit : kg_.iri(binding->index) == iri;
      case QueryTerm::Kind::literal: return is_literal && t.as_literal() == lit;
      case QueryTerm::Kind::node:
        if (is_literal) return false;
        if (!t.via_same_as) return t.value == iri;
        for (auto [it, end] = aliases_.equal_range(iri); it != end; ++it) {
          if (it->second == t.value) return true;
        }
        return false;
    }
    return false;
  }

  bool holds(const std::optional<Value>& binding) const {
    static const Literal none;
    for (const auto& v : q_.graph.variables) {
      if (v.type.empty()) continue;
      if (!binding || binding->literal) return false;
      const auto& types = kg_.node(binding->index).types;
      if (std::find(types.begin(), types.end(), v.type) == types.end()) return false;
    }
    const auto& rels = q_.graph.relations;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const auto& p = rels[i];
      const bool anchored = q_.constraint && q_.constraint->relation == i;
      bool found = false;
      for (const auto& f : flat_) {
        if (!p.predicate.empty() && f.predicate != p.predicate) continue;
        if (q_.model == GraphModel::reified && f.provenance != p.provenance) continue;
        if (!same(p.subject, binding, false, f.subject, none)) continue;
        if (!same(p.object, binding, f.object_literal, f.object, f.object_value)) continue;
        if (anchored) {
          const auto& schema = kg_.schema();
          const auto& t = schema.is_begin_predicate(q_.constraint->predicate) ? f.valid_from
                          : schema.is_end_predicate(q_.constraint->predicate) ? f.valid_to
                                                                              : std::optional<Literal>{};
          if (!t || !passes_filter(*q_.constraint, *t)) continue;
        }
        found = true;
        break;
      }
      if (!found) return false;
    }
    if (q_.constraint && !q_.constraint->relation) {
      const auto& c = *q_.constraint;
      return std::any_of(flat_.begin(), flat_.end(), [&](const FlatRelation& f) {
        return f.predicate == c.predicate && f.object_literal && same(c.term, binding, false, f.subject, none) &&
               passes_filter(c, f.object_value);
      });
    }
    return true;
  }

  const KnowledgeGraph& kg_;
  const SemanticQuery& q_;
  std::vector<FlatRelation> flat_;
  std::multimap<std::string, std::string> aliases_;
};

}  // namespace

AnswerSet evaluate(const KnowledgeGraph& kg, const SemanticQuery& q) { return IndexedEvaluator(kg, q).run(); }

AnswerSet brute_force_oracle(const KnowledgeGraph& kg, const SemanticQuery& q) { return BruteForce(kg, q).run(); }

}  // namespace eventqa
