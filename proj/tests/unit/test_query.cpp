#include <gtest/gtest.h>

#include "eventqa/query.hpp"
#include "eventqa/sparql.hpp"
#include "support.hpp"

namespace eventqa {
namespace {

using test::node;
using test::var;
using test::x;

QueryGraph race_graph() {
  QueryGraph g;
  g.relations.push_back({var("event"), x("dbo:fastestDriverTeam"), node("dbr:Scuderia_Ferrari"), Provenance::direct, {}});
  g.relations.push_back(
      {var("event"), x("dbo:secondTeam"), node("dbr:Williams_Grand_Prix_Engineering"), Provenance::direct, {}});
  g.variables.push_back({"event", x("dbo:Event"), VariableRole::node, x("dbr:2002_German_Grand_Prix")});
  return g;
}

TemporalConstraint after_2001() {
  TemporalConstraint c;
  c.term = var("event");
  c.predicate = x("dbp:year");
  c.variable = "year";
  c.mode = TemporalMode::after;
  c.lower = Literal{"2001", vocab::xsd_integer, ""};
  return c;
}

TEST(Query, RelationCountIgnoresFilterSupport) {
  const auto q = make_query(race_graph(), QueryType::count, after_2001(), GraphModel::direct);
  EXPECT_EQ(relation_count(q), 2u);
}

TEST(Query, RelationCountOfParsedCountQuery) {
  EXPECT_EQ(relation_count(parse(test::count_query_text, GraphModel::direct)), 2u);
}

TEST(Query, EmptyGraphHasNoRelations) {
  SemanticQuery q;
  EXPECT_EQ(relation_count(q), 0u);
}

TEST(Query, SingleSeedRelation) {
  QueryGraph g;
  g.relations.push_back({node("dbr:A"), x("dbo:p"), node("dbr:B"), Provenance::direct, {}});
  EXPECT_EQ(relation_count(make_query(g, QueryType::ask, std::nullopt, GraphModel::direct)), 1u);
}

TEST(Query, ElementSetOfRaceGraph) {
  const auto q = make_query(race_graph(), QueryType::select, std::nullopt, GraphModel::direct);
  EXPECT_EQ(element_set(q), (std::set<std::string>{x("dbr:Scuderia_Ferrari"), x("dbr:Williams_Grand_Prix_Engineering"),
                                                   x("dbo:fastestDriverTeam"), x("dbo:secondTeam")}));
}

TEST(Query, ElementSetOfVariablesOnly) {
  QueryGraph g;
  g.relations.push_back({var("event"), x("dbo:p"), node("dbr:B"), Provenance::direct, {}});
  g.relations.push_back({var("event"), x("dbo:q"), node("dbr:C"), Provenance::direct, {}});
  g.variables.push_back({"event", {}, VariableRole::node, {}});
  auto q = make_query(g, QueryType::select, std::nullopt, GraphModel::direct);
  q.graph.relations[0].object = var("event");
  q.graph.relations[1].object = var("event");
  EXPECT_EQ(element_set(q), (std::set<std::string>{x("dbo:p"), x("dbo:q")}));
}

TEST(Query, IsomorphicGraphsOverDifferentIrisAreDisjoint) {
  QueryGraph a;
  a.relations.push_back({node("dbr:A"), x("dbo:p"), node("dbr:B"), Provenance::direct, {}});
  QueryGraph b;
  b.relations.push_back({node("dbr:C"), x("dbo:q"), node("dbr:D"), Provenance::direct, {}});
  const auto ea = element_set(make_query(a, QueryType::ask, std::nullopt, GraphModel::direct));
  const auto eb = element_set(make_query(b, QueryType::ask, std::nullopt, GraphModel::direct));
  for (const auto& e : ea) EXPECT_FALSE(eb.contains(e));
}

TEST(Query, AskWithVariableRejected) {
  EXPECT_THROW(make_query(race_graph(), QueryType::ask, std::nullopt, GraphModel::direct), InvalidQuery);
}

TEST(Query, SelectWithoutVariableRejected) {
  auto g = race_graph();
  g.variables.clear();
  for (auto& r : g.relations) r.subject = node("dbr:2002_German_Grand_Prix");
  EXPECT_THROW(make_query(g, QueryType::select, std::nullopt, GraphModel::direct), InvalidQuery);
}

TEST(Query, DisconnectedGraphRejected) {
  QueryGraph g;
  g.relations.push_back({node("dbr:A"), x("dbo:p"), node("dbr:B"), Provenance::direct, {}});
  g.relations.push_back({node("dbr:C"), x("dbo:p"), node("dbr:D"), Provenance::direct, {}});
  EXPECT_FALSE(is_connected(g));
  EXPECT_THROW(make_query(g, QueryType::ask, std::nullopt, GraphModel::direct), InvalidQuery);
}

TEST(Query, CanonicalOrderIsByPredicate) {
  auto g = race_graph();
  std::swap(g.relations[0], g.relations[1]);
  const auto q = make_query(g, QueryType::select, std::nullopt, GraphModel::direct);
  EXPECT_EQ(q.graph.relations[0].predicate, x("dbo:fastestDriverTeam"));
}

TEST(Query, StructuralEqualityIgnoresProvenance) {
  auto a = make_query(race_graph(), QueryType::select, std::nullopt, GraphModel::direct);
  auto b = a;
  b.graph.variables[0].bound_to = "urn:elsewhere";
  b.graph.relations[0].source_id = "urn:r";
  b.trace.seed = 99;
  EXPECT_TRUE(structurally_equal(a, b));
  b.graph.variables[0].type.clear();
  EXPECT_FALSE(structurally_equal(a, b));
}

TEST(Query, VertexDegrees) {
  const auto v = vertices(race_graph());
  ASSERT_EQ(v.size(), 3u);
  std::size_t max_degree = 0;
  for (const auto& vx : v) max_degree = std::max(max_degree, vx.degree);
  EXPECT_EQ(max_degree, 2u);
}

TEST(Query, StripConstraint) {
  const auto q = make_query(race_graph(), QueryType::count, after_2001(), GraphModel::direct);
  EXPECT_FALSE(strip_constraint(q).constraint);
}

}  // namespace
}  // namespace eventqa
