#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eventqa/evaluator.hpp"
#include "eventqa/kg.hpp"
#include "eventqa/query.hpp"
#include "eventqa/schema.hpp"
#include "eventqa/term.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa::test {

/// Expands a prefixed name from the standard table; full IRIs pass through.
inline std::string x(std::string_view name) {
  if (auto full = PrefixTable::standard().expand(name)) return *full;
  return std::string(name);
}

/// Triples written with prefixed names.
class Triples {
 public:
  Triples& iri(std::string_view s, std::string_view p, std::string_view o) {
    triples_.push_back({Term::make_iri(x(s)), Term::make_iri(x(p)), Term::make_iri(x(o))});
    return *this;
  }
  Triples& lit(std::string_view s, std::string_view p, std::string_view lexical, std::string_view datatype = {},
               std::string_view lang = {}) {
    Literal l{std::string(lexical), datatype.empty() ? std::string() : x(datatype), std::string(lang)};
    triples_.push_back({Term::make_iri(x(s)), Term::make_iri(x(p)), Term::make_literal(std::move(l))});
    return *this;
  }
  /// EventKG statement node: subject, role type, object.
  Triples& statement(std::string_view id, std::string_view s, std::string_view role, std::string_view o) {
    iri(id, "rdf:type", "eventKG-s:Relation");
    iri(id, "rdf:subject", s);
    iri(id, "rdf:object", o);
    return iri(id, "sem:roleType", role);
  }
  [[nodiscard]] const std::vector<Triple>& all() const { return triples_; }
  [[nodiscard]] KnowledgeGraph build(const SchemaConfig& schema) const { return build_graph(triples_, schema); }

 private:
  std::vector<Triple> triples_;
};

/// Collapses whitespace runs to one space and trims, for text comparisons.
inline std::string squash(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

/// Drops all whitespace, for "equal modulo whitespace" comparisons.
inline std::string no_space(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c != ' ' && c != '\n' && c != '\t' && c != '\r') out += c;
  }
  return out;
}

inline QueryTerm var(std::string name) { return QueryTerm::variable(std::move(name)); }
inline QueryTerm node(std::string_view name, bool via_same_as = false) { return QueryTerm::node(x(name), via_same_as); }

/// Two German Grands Prix matching both teams (2000 and 2002), one matching only
/// Ferrari (2001). After 2001 exactly one race qualifies.
inline Triples grand_prix_triples() {
  Triples t;
  t.iri("dbr:2002_German_Grand_Prix", "rdf:type", "dbo:Event")
      .lit("dbr:2002_German_Grand_Prix", "rdfs:label", "2002 German Grand Prix", {}, "en")
      .iri("dbr:2002_German_Grand_Prix", "dbo:fastestDriverTeam", "dbr:Scuderia_Ferrari")
      .iri("dbr:2002_German_Grand_Prix", "dbo:secondTeam", "dbr:Williams_Grand_Prix_Engineering")
      .lit("dbr:2002_German_Grand_Prix", "dbp:year", "2002", "xsd:integer");
  t.iri("dbr:2001_German_Grand_Prix", "rdf:type", "dbo:Event")
      .lit("dbr:2001_German_Grand_Prix", "rdfs:label", "2001 German Grand Prix", {}, "en")
      .iri("dbr:2001_German_Grand_Prix", "dbo:fastestDriverTeam", "dbr:Scuderia_Ferrari")
      .iri("dbr:2001_German_Grand_Prix", "dbo:secondTeam", "dbr:McLaren")
      .lit("dbr:2001_German_Grand_Prix", "dbp:year", "2001", "xsd:integer");
  t.iri("dbr:2000_German_Grand_Prix", "rdf:type", "dbo:Event")
      .iri("dbr:2000_German_Grand_Prix", "dbo:fastestDriverTeam", "dbr:Scuderia_Ferrari")
      .iri("dbr:2000_German_Grand_Prix", "dbo:secondTeam", "dbr:Williams_Grand_Prix_Engineering")
      .lit("dbr:2000_German_Grand_Prix", "dbp:year", "2000", "xsd:integer");
  return t;
}

/// Only the 2002 race: its two team relations are the whole walkable graph.
inline Triples seed_relation_triples() {
  Triples t;
  t.iri("dbr:2002_German_Grand_Prix", "rdf:type", "dbo:Event")
      .lit("dbr:2002_German_Grand_Prix", "rdfs:label", "2002 German Grand Prix", {}, "en")
      .iri("dbr:2002_German_Grand_Prix", "dbo:fastestDriverTeam", "dbr:Scuderia_Ferrari")
      .iri("dbr:2002_German_Grand_Prix", "dbo:secondTeam", "dbr:Williams_Grand_Prix_Engineering")
      .lit("dbr:2002_German_Grand_Prix", "dbp:year", "2002", "xsd:integer");
  return t;
}

/// EventKG-style league season won by Peñarol in Uruguay.
inline Triples league_triples(bool with_other_season) {
  Triples t;
  t.iri("eventKG-r:event_1", "rdf:type", "sem:Event")
      .iri("eventKG-r:event_1", "owl:sameAs", "dbr:1973_Uruguayan_Primera_División")
      .lit("eventKG-r:event_1", "rdfs:label", "1973 Uruguayan Primera División", {}, "en")
      .iri("eventKG-r:entity_1", "owl:sameAs", "dbr:Peñarol")
      .iri("eventKG-r:entity_2", "owl:sameAs", "dbr:Uruguay")
      .statement("eventKG-r:relation_1", "eventKG-r:event_1", "dbo:soccerLeagueWinner", "eventKG-r:entity_1")
      .statement("eventKG-r:relation_2", "eventKG-r:event_1", "dbo:country", "eventKG-r:entity_2");
  if (with_other_season) {
    t.iri("eventKG-r:event_2", "rdf:type", "sem:Event")
        .iri("eventKG-r:event_2", "owl:sameAs", "dbr:1974_Uruguayan_Primera_División")
        .iri("eventKG-r:entity_3", "owl:sameAs", "dbr:Club_Nacional_de_Football")
        .statement("eventKG-r:relation_3", "eventKG-r:event_2", "dbo:soccerLeagueWinner", "eventKG-r:entity_3")
        .statement("eventKG-r:relation_4", "eventKG-r:event_2", "dbo:country", "eventKG-r:entity_2")
        .iri("eventKG-r:event_3", "rdf:type", "sem:Event")
        .statement("eventKG-r:relation_5", "eventKG-r:event_3", "dbo:soccerLeagueWinner", "eventKG-r:entity_1");
  }
  return t;
}

inline constexpr std::string_view count_query_text = R"(SELECT (COUNT(DISTINCT(?event) AS ?count)) WHERE {
  ?event rdf:type dbo:Event .

  ?event dbo:fastestDriverTeam dbr:Scuderia_Ferrari .
  ?event dbo:secondTeam dbr:Williams_Grand_Prix_Engineering .

  ?event dbp:year ?year .
  FILTER ( ?year > "2001"^^xsd:integer)
}
)";

inline constexpr std::string_view league_query_text = R"(SELECT DISTINCT ?event WHERE {
  ?relation1 rdf:object ?entity1 .
  ?relation1 rdf:subject ?event .
  ?relation1 sem:roleType dbo:country .

  ?relation2 rdf:object ?entity2 .
  ?relation2 rdf:subject ?event .
  ?relation2 sem:roleType dbo:soccerLeagueWinner .

  ?entity1 owl:sameAs dbr:Uruguay .
  ?entity2 owl:sameAs dbr:Peñarol .
}
)";

// Translator fixture.

// Five races in two aligned graphs. race_3's winner has no alias, and the reified
// winner statement of race_1 carries a validity interval.
struct Races {
  KnowledgeGraph reified;
  KnowledgeGraph direct;
};

inline const Races& races() {
  static const Races r = [] {
    Triples ek;
    Triples db;
    const char* winners[] = {"team_a", "team_b", "team_gap", "team_a", "team_b"};
    for (int i = 1; i <= 5; ++i) {
      const auto n = std::to_string(i);
      const auto ev = "eventKG-r:race_" + n;
      const auto dbr = "dbr:Race_" + n;
      const std::string winner = winners[i - 1];
      const auto date = "200" + n + "-05-01";
      ek.iri(ev, "rdf:type", "sem:Event").iri(ev, "owl:sameAs", dbr).lit(ev, "sem:hasBeginTimeStamp", date, "xsd:date");
      ek.statement("eventKG-r:relation_w" + n, ev, "dbo:winner", "eventKG-r:" + winner);
      ek.statement("eventKG-r:relation_c" + n, ev, "dbo:country", "eventKG-r:country_x");
      db.iri(dbr, "rdf:type", "dbo:Event").iri(dbr, "dbo:country", "dbr:Country_X").lit(dbr, "dbo:date", date, "xsd:date");
      if (winner != "team_gap") db.iri(dbr, "dbo:winner", winner == "team_a" ? "dbr:Team_A" : "dbr:Team_B");
    }
    ek.iri("eventKG-r:team_a", "owl:sameAs", "dbr:Team_A")
        .iri("eventKG-r:team_b", "owl:sameAs", "dbr:Team_B")
        .iri("eventKG-r:country_x", "owl:sameAs", "dbr:Country_X")
        .lit("eventKG-r:relation_w1", "sem:hasBeginTimeStamp", "2001-05-01", "xsd:date");
    return Races{ek.build(SchemaConfig::eventkg()), db.build(SchemaConfig::dbpedia())};
  }();
  return r;
}

inline QueryRelation rel(QueryTerm s, std::string_view p, QueryTerm o) {
  return {std::move(s), p.empty() ? std::string() : x(p), std::move(o), Provenance::reified, {}};
}

inline SemanticQuery select_event(std::vector<QueryRelation> rels, QueryType type = QueryType::select,
                           std::optional<TemporalConstraint> c = std::nullopt) {
  QueryGraph g;
  g.relations = std::move(rels);
  g.variables.push_back({"event", {}, VariableRole::node, {}});
  return make_query(g, type, std::move(c), GraphModel::reified);
}

inline TemporalConstraint begin_after(std::string_view year) {
  TemporalConstraint c;
  c.term = var("event");
  c.predicate = x("sem:hasBeginTimeStamp");
  c.variable = "begin";
  c.mode = TemporalMode::after;
  c.lower = Literal{std::string(year) + "-12-31", vocab::xsd_date, ""};
  return c;
}

struct Designed {
  std::vector<SemanticQuery> queries;
  std::vector<std::string> ids;
};

inline Designed designed_queries() {
  const auto a = node("dbr:Team_A", true);
  const auto b = node("dbr:Team_B", true);
  const auto cx = node("dbr:Country_X", true);
  const auto r1 = node("dbr:Race_1", true);
  const auto r2 = node("dbr:Race_2", true);
  const auto r4 = node("dbr:Race_4", true);
  Designed d;
  auto add = [&](std::string id, SemanticQuery q) {
    d.ids.push_back(std::move(id));
    d.queries.push_back(std::move(q));
  };
  add("winner-a", select_event({rel(var("event"), "dbo:winner", a), rel(var("event"), "dbo:country", cx)}));
  add("winner-b", select_event({rel(var("event"), "dbo:winner", b), rel(var("event"), "dbo:country", cx)}));
  add("count-a",
      select_event({rel(var("event"), "dbo:winner", a), rel(var("event"), "dbo:country", cx)}, QueryType::count));
  {
    QueryGraph g;
    g.relations = {rel(r1, "dbo:winner", a), rel(r1, "dbo:country", cx)};
    add("ask-race-1", make_query(g, QueryType::ask, std::nullopt, GraphModel::reified));
  }
  {
    QueryGraph g;
    g.relations = {rel(r1, "dbo:winner", var("entity")), rel(r4, "dbo:winner", var("entity"))};
    g.variables.push_back({"entity", {}, VariableRole::node, {}});
    add("shared-winner", make_query(g, QueryType::select, std::nullopt, GraphModel::reified));
  }
  add("after-2002", select_event({rel(var("event"), "dbo:winner", b), rel(var("event"), "dbo:country", cx)},
                                 QueryType::select, begin_after("2002")));
  {
    QueryGraph g;
    g.relations = {rel(r2, "dbo:winner", b), rel(r2, "dbo:country", cx)};
    add("ask-race-2", make_query(g, QueryType::ask, std::nullopt, GraphModel::reified));
  }
  // Designed gaps.
  add("unaliased-winner", select_event({rel(var("event"), "dbo:winner", node("eventKG-r:team_gap")),
                                        rel(var("event"), "dbo:country", cx)}));
  add("open-role", select_event({rel(var("event"), "", a), rel(var("event"), "dbo:country", cx)}));
  {
    auto q = select_event({rel(var("event"), "dbo:winner", a), rel(var("event"), "dbo:country", cx)});
    TemporalConstraint c;
    c.relation = 1;  // dbo:winner after canonical ordering
    c.predicate = x("sem:hasBeginTimeStamp");
    c.variable = "begin";
    c.mode = TemporalMode::within;
    c.lower = Literal{"2001-05-01", vocab::xsd_date, ""};
    c.upper = Literal{"2001-05-01", vocab::xsd_date, ""};
    q = make_query(q.graph, q.type, c, q.model);
    add("validity", std::move(q));
  }
  return d;
}

// Reified answers rewritten through the nodes' aliases.
inline AnswerSet aliased(const AnswerSet& a, const KnowledgeGraph& kg) {
  auto out = a;
  for (auto& t : out.bindings) {
    const auto n = kg.find_node(t.value);
    if (t.is_iri() && n && !kg.node(*n).same_as.empty()) t.value = kg.node(*n).same_as.front();
  }
  std::sort(out.bindings.begin(), out.bindings.end());
  return out;
}

// Independent pairwise oracles: plain loops over sorted vectors and split-on-space
// word counts, no shared helpers with the implementation.
inline double oracle_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t shared = 0;
  for (const auto& e : a) shared += std::count(b.begin(), b.end(), e) > 0;
  const auto all = a.size() + b.size() - shared;
  return all == 0 ? 0.0 : double(shared) / double(all);
}

inline std::vector<std::string> oracle_elements(const SemanticQuery& q) {
  std::vector<std::string> out;
  auto put = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& r : q.graph.relations) {
    put(r.predicate);
    if (!r.subject.is_variable()) put(r.subject.value);
    if (!r.object.is_variable()) put(r.object.value);
  }
  return out;
}

inline double oracle_cosine(const std::string& a, const std::string& b) {
  std::map<std::string, double> va;
  std::map<std::string, double> vb;
  std::istringstream ia(a);
  for (std::string w; ia >> w;) va[w] += 1;
  std::istringstream ib(b);
  for (std::string w; ib >> w;) vb[w] += 1;
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (const auto& [w, c] : va) {
    na += c * c;
    if (vb.contains(w)) dot += c * vb[w];
  }
  for (const auto& [w, c] : vb) nb += c * c;
  return (na == 0 || nb == 0) ? 0.0 : dot / std::sqrt(na * nb);
}

}  // namespace eventqa::test
