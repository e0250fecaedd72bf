#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "eventqa/fixture.hpp"
#include "eventqa/generator.hpp"
#include "eventqa/metrics.hpp"
#include "eventqa/rng.hpp"
#include "support.hpp"

namespace eventqa {
namespace {

using test::oracle_cosine;
using test::oracle_elements;
using test::oracle_jaccard;

using test::node;
using test::var;
using test::x;

// Concrete-node query over the given predicate/node pairs, built without validation.
SemanticQuery raw_query(const std::vector<std::pair<std::string, std::string>>& edges) {
  SemanticQuery q;
  for (const auto& [p, o] : edges) {
    q.graph.relations.push_back({QueryTerm::node("urn:s"), p, QueryTerm::node(o), Provenance::direct, {}});
  }
  return q;
}

TEST(Complexity, AllPairs) {
  std::vector<SemanticQuery> qs(5, raw_query({{"urn:p", "urn:a"}, {"urn:q", "urn:b"}}));
  EXPECT_EQ(complexity(qs), 2.0);
}

TEST(Complexity, MeanOfCounts) {
  const std::vector<SemanticQuery> qs{raw_query({{"urn:p", "urn:a"}}), raw_query({{"urn:p", "urn:a"}, {"urn:q", "urn:b"}}),
                                      raw_query({{"urn:p", "urn:a"}, {"urn:q", "urn:b"}, {"urn:r", "urn:c"}})};
  EXPECT_EQ(complexity(qs), 2.0);
  EXPECT_EQ(complexity(std::span(qs).first(1)), 1.0);
  EXPECT_THROW(complexity({}), EmptySet);
}

TEST(Complexity, GeneratedSetIsExactlyTwo) {
  const auto kg = fixture_graph({100, 20}, GraphModel::reified);
  GeneratorConfig c;
  c.rng_seed = 42;
  EXPECT_EQ(complexity(generate_dataset(kg, 1000, c)), 2.0);
}

TEST(Similarity, WorkedJaccard) {
  const std::set<std::string> a{"a", "b", "c", "p", "q"};
  const std::set<std::string> b{"a", "b", "d", "p", "r"};
  EXPECT_EQ(jaccard(a, b), 3.0 / 7.0);
  EXPECT_EQ(jaccard(a, a), 1.0);
  EXPECT_EQ(jaccard(a, {"z"}), 0.0);
  EXPECT_EQ(jaccard({}, {}), 0.0);
}

TEST(Similarity, Queries) {
  // {urn:s, urn:p, urn:a, urn:q, urn:b} vs {urn:s, urn:p, urn:a, urn:q, urn:c}: 4 shared of 6.
  const auto a = raw_query({{"urn:p", "urn:a"}, {"urn:q", "urn:b"}});
  const auto b = raw_query({{"urn:p", "urn:a"}, {"urn:q", "urn:c"}});
  EXPECT_EQ(query_similarity(a, b), 4.0 / 6.0);
  EXPECT_EQ(query_similarity(a, a), 1.0);
}

TEST(Diversity, IdenticalQueries) {
  const std::vector<SemanticQuery> qs(2, raw_query({{"urn:p", "urn:a"}}));
  EXPECT_EQ(query_diversity(qs), 0.0);
}

TEST(Diversity, WorkedThreeQueries) {
  // Element sets {a,b,c,p,q}, {a,b,d,p,r} and a disjoint one: similarities 3/7, 0, 0.
  SemanticQuery q1;
  q1.graph.relations = {{node("urn:a"), "urn:p", node("urn:b"), Provenance::direct, {}},
                        {node("urn:a"), "urn:q", node("urn:c"), Provenance::direct, {}}};
  SemanticQuery q2;
  q2.graph.relations = {{node("urn:a"), "urn:p", node("urn:b"), Provenance::direct, {}},
                        {node("urn:a"), "urn:r", node("urn:d"), Provenance::direct, {}}};
  SemanticQuery q3;
  q3.graph.relations = {{node("urn:x"), "urn:y", node("urn:z"), Provenance::direct, {}}};
  ASSERT_EQ(query_similarity(q1, q2), 3.0 / 7.0);
  const std::vector<SemanticQuery> qs{q1, q2, q3};
  EXPECT_EQ(query_diversity(qs), 6.0 / 7.0);
  EXPECT_THROW(query_diversity(std::span(qs).first(1)), SingletonSet);
  EXPECT_THROW(query_diversity({}), EmptySet);
}

TEST(Verbalization, WorkedCosine) {
  const auto a = tokenize("when did the war start");
  const auto b = tokenize("when did the battle end");
  EXPECT_EQ(verbalization_similarity(a, b), 0.6);
  EXPECT_EQ(verbalization_similarity(a, a), 1.0);
  EXPECT_EQ(verbalization_similarity(a, tokenize("who won")), 0.0);
  EXPECT_EQ(verbalization_similarity(a, {}), 0.0);
}

TEST(Verbalization, WorkedDiversity) {
  const std::vector<std::string> pair{"when did the war start", "when did the battle end"};
  EXPECT_EQ(verbalization_diversity(pair, "en"), 0.4);
  const std::vector<std::string> same(4, "Who won the 1973 league?");
  EXPECT_EQ(verbalization_diversity(same, "en"), 0.0);
}

TEST(Verbalization, MissingTexts) {
  const std::vector<std::string> none{"", ""};
  EXPECT_THROW(verbalization_diversity(none, "pt"), MissingLanguage);
  const std::vector<std::string> one{"", "uma pergunta"};
  EXPECT_THROW(verbalization_diversity(one, "pt"), SingletonSet);
}

TEST(MetricsOracle, RandomSetsAgree) {
  const std::vector<std::string> words{"when", "did", "the", "war", "start", "peñarol", "über", "league",
                                       "who", "won", "in", "1973", "battle", "end", "festival", "são"};
  for (std::size_t n : {2, 3, 10, 57, 200, 500}) {
    RngStream rng(1000 + n, 0);
    std::vector<SemanticQuery> queries;
    std::vector<std::string> texts;
    std::size_t relation_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      SemanticQuery q;
      const auto relations = 1 + rng.uniform_index(3);
      relation_total += relations;
      for (std::size_t r = 0; r < relations; ++r) {
        q.graph.relations.push_back({QueryTerm::node("urn:n" + std::to_string(rng.uniform_index(12))),
                                     "urn:p" + std::to_string(rng.uniform_index(6)),
                                     rng.bernoulli(0.2) ? QueryTerm::variable("v")
                                                        : QueryTerm::node("urn:n" + std::to_string(rng.uniform_index(12))),
                                     Provenance::direct,
                                     {}});
      }
      queries.push_back(std::move(q));
      std::string text;
      const auto length = 1 + rng.uniform_index(8);
      for (std::size_t w = 0; w < length; ++w) text += (w ? " " : "") + words[rng.uniform_index(words.size())];
      texts.push_back(std::move(text));
    }
    double query_sum = 0;
    double text_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        query_sum += oracle_jaccard(oracle_elements(queries[i]), oracle_elements(queries[j]));
        text_sum += oracle_cosine(texts[i], texts[j]);
      }
    }
    const double pairs = double(n) * double(n - 1) / 2;
    EXPECT_NEAR(complexity(queries), double(relation_total) / double(n), 1e-9) << n;
    EXPECT_NEAR(query_diversity(queries), 1 - query_sum / pairs, 1e-9) << n;
    EXPECT_NEAR(verbalization_diversity(texts, "en"), 1 - text_sum / pairs, 1e-9) << n;
  }
}

TEST(DatasetStats, SharedEventCountsOnce) {
  const auto kg = test::grand_prix_triples().build(SchemaConfig::dbpedia());
  const auto race = node("dbr:2002_German_Grand_Prix");
  std::vector<SemanticQuery> qs(2);
  qs[0].graph.relations = {{race, x("dbo:secondTeam"), node("dbr:Williams_Grand_Prix_Engineering"), Provenance::direct, {}}};
  qs[1].graph.relations = {{race, x("dbo:fastestDriverTeam"), node("dbr:Scuderia_Ferrari"), Provenance::direct, {}}};
  const auto s = dataset_stats(qs, &kg);
  EXPECT_EQ(s.events.size(), 1u);
  EXPECT_EQ(s.entities.size(), 2u);
  EXPECT_EQ(s.predicates.size(), 2u);
}

TEST(DatasetStats, HandCountedFixture) {
  const auto kg = test::league_triples(true).build(SchemaConfig::eventkg());
  const auto uruguay = node("dbr:Uruguay", true);
  const auto penarol = node("dbr:Peñarol", true);
  const auto nacional = node("dbr:Club_Nacional_de_Football", true);
  const auto season73 = node("dbr:1973_Uruguayan_Primera_División", true);
  const auto season74 = node("dbr:1974_Uruguayan_Primera_División", true);
  auto q = [](std::vector<QueryRelation> rels) {
    SemanticQuery s;
    s.graph.relations = std::move(rels);
    s.model = GraphModel::reified;
    return s;
  };
  auto r = [](QueryTerm a, std::string_view p, QueryTerm b) {
    return QueryRelation{std::move(a), x(p), std::move(b), Provenance::reified, {}};
  };
  std::vector<SemanticQuery> qs{
      q({r(season73, "dbo:country", uruguay), r(season73, "dbo:soccerLeagueWinner", penarol)}),
      q({r(season74, "dbo:country", uruguay), r(season74, "dbo:soccerLeagueWinner", nacional)}),
      q({r(var("event"), "dbo:country", uruguay), r(var("event"), "dbo:soccerLeagueWinner", penarol)}),
      q({r(season73, "dbo:soccerLeagueWinner", var("entity")), r(season74, "dbo:country", var("entity"))}),
      q({r(season74, "dbo:soccerLeagueWinner", nacional), r(season74, "dbo:country", uruguay)}),
  };
  qs[2].graph.variables = {{"event", {}, VariableRole::node, {}}};
  qs[3].graph.variables = {{"entity", {}, VariableRole::node, {}}};
  std::vector<AnswerSet> answers(5);
  answers[2].kind = QueryType::select;
  answers[2].bindings = {Term::make_iri(x("eventKG-r:event_1")), Term::make_iri(x("eventKG-r:event_3"))};
  const auto s = dataset_stats(qs, &kg, answers);
  // Events: both seasons by alias, event_1 and event_3 by IRI.
  EXPECT_EQ(s.events, (std::set<std::string>{x("dbr:1973_Uruguayan_Primera_División"),
                                             x("dbr:1974_Uruguayan_Primera_División"), x("eventKG-r:event_1"),
                                             x("eventKG-r:event_3")}));
  EXPECT_EQ(s.entities,
            (std::set<std::string>{x("dbr:Uruguay"), x("dbr:Peñarol"), x("dbr:Club_Nacional_de_Football")}));
  EXPECT_EQ(s.predicates.size(), 2u);
  ASSERT_EQ(s.predicate_ranking.size(), 2u);
  EXPECT_EQ(s.predicate_ranking[0], std::make_pair(x("dbo:country"), std::size_t{5}));
  EXPECT_EQ(s.predicate_ranking[1], std::make_pair(x("dbo:soccerLeagueWinner"), std::size_t{5}));
}

}  // namespace
}  // namespace eventqa
