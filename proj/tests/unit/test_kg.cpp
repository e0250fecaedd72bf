#include <gtest/gtest.h>

#include "eventqa/fixture.hpp"
#include "eventqa/kg.hpp"
#include "support.hpp"

namespace eventqa {
namespace {

using test::Triples;
using test::x;

TEST(Graph, ReifiedStatementFoldsToOneRelation) {
  Triples t;
  t.iri("eventKG-r:gp2002", "rdf:type", "sem:Event")
      .statement("eventKG-r:relation_1", "eventKG-r:gp2002", "dbo:fastestDriverTeam", "eventKG-r:ferrari");
  const auto kg = t.build(SchemaConfig::eventkg());
  ASSERT_EQ(kg.relation_count(), 1u);
  const auto& r = kg.relation(0);
  EXPECT_EQ(r.provenance, Provenance::reified);
  EXPECT_EQ(r.predicate, x("dbo:fastestDriverTeam"));
  EXPECT_EQ(kg.iri(r.subject), x("eventKG-r:gp2002"));
  EXPECT_EQ(r.id, x("eventKG-r:relation_1"));
}

TEST(Graph, DirectTriple) {
  Triples t;
  t.iri("dbr:2002_German_Grand_Prix", "rdf:type", "dbo:Event")
      .iri("dbr:2002_German_Grand_Prix", "dbo:secondTeam", "dbr:Williams_Grand_Prix_Engineering");
  const auto kg = t.build(SchemaConfig::dbpedia());
  ASSERT_EQ(kg.relation_count(), 1u);
  EXPECT_EQ(kg.relation(0).provenance, Provenance::direct);
  EXPECT_EQ(kg.events().size(), 1u);
  EXPECT_EQ(kg.entities().size(), 1u);
}

TEST(Graph, EmptyInput) {
  const auto kg = build_graph({}, SchemaConfig::eventkg());
  EXPECT_EQ(kg.node_count(), 0u);
  EXPECT_EQ(kg.relation_count(), 0u);
  EXPECT_TRUE(kg.events().empty());
  EXPECT_TRUE(kg.entities().empty());
}

TEST(Graph, StatementWithoutRoleIsDangling) {
  Triples t;
  t.iri("eventKG-r:relation_1", "rdf:subject", "eventKG-r:a").iri("eventKG-r:relation_1", "rdf:object", "eventKG-r:b");
  EXPECT_THROW(t.build(SchemaConfig::eventkg()), DanglingReification);
}

TEST(Graph, StatementValidityIsKept) {
  Triples t;
  t.statement("eventKG-r:relation_1", "eventKG-r:a", "dbo:commander", "eventKG-r:b")
      .lit("eventKG-r:relation_1", "sem:hasBeginTimeStamp", "1805-10-21", "xsd:date");
  const auto kg = t.build(SchemaConfig::eventkg());
  ASSERT_EQ(kg.relation_count(), 1u);
  ASSERT_TRUE(kg.relation(0).valid_from);
  EXPECT_EQ(kg.relation(0).valid_from->lexical, "1805-10-21");
}

TEST(Graph, RelationsOfNode) {
  const auto kg = test::seed_relation_triples().build(SchemaConfig::dbpedia());
  const auto rels = relations_of(kg, x("dbr:Scuderia_Ferrari"));
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0].predicate, x("dbo:fastestDriverTeam"));
  const auto race = relations_of(kg, x("dbr:2002_German_Grand_Prix"));
  EXPECT_EQ(race.size(), 3u);  // two teams and the year
  bool found = false;
  for (const auto& r : race) found |= r.predicate == x("dbo:fastestDriverTeam");
  EXPECT_TRUE(found);
  EXPECT_THROW((void)relations_of(kg, "urn:missing"), UnknownNode);
}

TEST(Graph, IsolatedNodeHasNoRelations) {
  Triples t;
  t.iri("dbr:Lonely", "rdf:type", "dbo:Event");
  const auto kg = t.build(SchemaConfig::dbpedia());
  EXPECT_TRUE(relations_of(kg, x("dbr:Lonely")).empty());
}

TEST(Graph, TemporalFactsAreNotWalkable) {
  const auto kg = test::seed_relation_triples().build(SchemaConfig::dbpedia());
  std::size_t temporal = 0;
  for (const auto& r : kg.relations()) {
    temporal += kg.is_temporal_fact(r);
    EXPECT_EQ(kg.is_walkable(r), !kg.is_temporal_fact(r));
  }
  EXPECT_EQ(temporal, 1u);
}

TEST(Graph, LabelsAndAliases) {
  const auto kg = test::league_triples(false).build(SchemaConfig::eventkg());
  const auto ev = kg.find_node(x("eventKG-r:event_1"));
  ASSERT_TRUE(ev);
  EXPECT_EQ(kg.label(*ev, "en"), "1973 Uruguayan Primera División");
  const auto aliased = kg.nodes_same_as(x("dbr:Peñarol"));
  ASSERT_EQ(aliased.size(), 1u);
  EXPECT_EQ(kg.iri(aliased[0]), x("eventKG-r:entity_1"));
}

TEST(Graph, FixtureAdjacencyIsConsistent) {
  for (auto model : {GraphModel::reified, GraphModel::direct}) {
    const auto kg = fixture_graph({60, 3}, model);
    EXPECT_FALSE(check_adjacency(kg)) << *check_adjacency(kg);
    EXPECT_EQ(kg.events().size(), 60u);
  }
}

TEST(Graph, DigestDependsOnContent) {
  const auto a = fixture_graph({20, 1}, GraphModel::reified);
  const auto b = fixture_graph({20, 1}, GraphModel::reified);
  const auto c = fixture_graph({20, 2}, GraphModel::reified);
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
}

TEST(Schema, ParsesFlatConfig) {
  const auto s = SchemaConfig::parse(
      "event_type = \"rdf:type sem:Event\"\n"
      "reify.subject = \"rdf:subject\"\nreify.object = \"rdf:object\"\nreify.role = \"sem:roleType\"\n"
      "time.begin = \"sem:hasBeginTimeStamp\"\ntime.end = \"sem:hasEndTimeStamp\"\n"
      "label = \"rdfs:label\"\nsame_as = \"owl:sameAs\"\n");
  EXPECT_TRUE(s.reified());
  EXPECT_TRUE(s.is_begin_predicate(x("sem:hasBeginTimeStamp")));
  EXPECT_EQ(s.same_as, x("owl:sameAs"));
  EXPECT_EQ(s, SchemaConfig::eventkg());
}

TEST(Schema, UnknownKeyRejected) { EXPECT_THROW(SchemaConfig::parse("colour = \"red\"\n"), SchemaConfigError); }

}  // namespace
}  // namespace eventqa
