#include <gtest/gtest.h>

#include <filesystem>

#include <json.hpp>

#include "eventqa/evaluator.hpp"
#include "eventqa/fixture.hpp"
#include "eventqa/generator.hpp"
#include "eventqa/qald.hpp"
#include "support.hpp"

namespace eventqa {
namespace {

using test::x;
namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("eventqa_qald_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

DatasetEntry festival_entry() {
  DatasetEntry e;
  e.id = "1";
  e.sparql = {"ASK WHERE { <http://a> <http://p> <http://o> . }\n", GraphModel::direct};
  e.verbalizations = {{"en", "When did the Excitante music festival finish in Argentina?"},
                      {"pt", "Quando o festival de música Excitante terminou na Argentina?"},
                      {"de", "Wann ging das argentinische Musical Excitante zu Ende?"}};
  return e;
}

Dataset generated_dataset(std::size_t n) {
  const auto kg = fixture_graph({100, 20}, GraphModel::reified);
  GeneratorConfig c;
  c.rng_seed = 42;
  Dataset d{"event-qa", {}};
  const auto queries = generate_dataset(kg, n, c);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    DatasetEntry e;
    e.id = std::to_string(i + 1);
    e.sparql = emit(queries[i]);
    e.answers = evaluate(kg, queries[i]);
    e.seed_trace_digest = queries[i].trace.digest();
    e.generated_at = "2026-01-01T00:00:00Z";
    e.kg_digest = kg.digest();
    if (i % 3 == 0) e.verbalizations["en"] = "Question " + e.id + " über Peñarol?";
    if (i % 5 == 0) e.sparql_dbpedia = SparqlText{"ASK WHERE { <http://a> <http://p> <http://o> . }\n", GraphModel::direct};
    d.entries.push_back(std::move(e));
  }
  return d;
}

TEST(Qald, QuestionStringsInLanguageOrder) {
  const auto text = to_qald_json({"event-qa", {festival_entry()}});
  const auto j = nlohmann::json::parse(text);
  const auto& q = j["questions"][0]["question"];
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q[0]["language"], "en");
  EXPECT_EQ(q[0]["string"], "When did the Excitante music festival finish in Argentina?");
  EXPECT_EQ(q[1]["language"], "pt");
  EXPECT_EQ(q[1]["string"], "Quando o festival de música Excitante terminou na Argentina?");
  EXPECT_EQ(q[2]["language"], "de");
  EXPECT_EQ(q[2]["string"], "Wann ging das argentinische Musical Excitante zu Ende?");
  EXPECT_EQ(parse_qald_json(text).entries[0], festival_entry());
}

TEST(Qald, EmptyDataset) {
  const auto j = nlohmann::json::parse(to_qald_json({"empty", {}}));
  EXPECT_TRUE(j["questions"].is_array());
  EXPECT_TRUE(j["questions"].empty());
}

TEST(Qald, AskAnswerAsBoolean) {
  auto e = festival_entry();
  AnswerSet a;
  a.kind = QueryType::ask;
  a.boolean = true;
  e.answers = a;
  const auto j = nlohmann::json::parse(to_qald_json({"d", {e}}));
  EXPECT_EQ(j["questions"][0]["answers"][0]["boolean"], true);
  EXPECT_EQ(parse_qald_json(to_qald_json({"d", {e}})).entries[0].answers, a);
}

TEST(Qald, CountAndSelectAnswers) {
  const auto d = generated_dataset(60);
  const auto back = parse_qald_json(to_qald_json(d));
  for (std::size_t i = 0; i < d.entries.size(); ++i) EXPECT_EQ(back.entries[i].answers, d.entries[i].answers) << i;
}

TEST(Qald, RoundTripThroughFile) {
  TempDir tmp;
  const auto d = generated_dataset(100);
  write_qald(d, tmp.path / "d.json");
  EXPECT_EQ(read_qald(tmp.path / "d.json"), d);
  EXPECT_EQ(to_qald_json(read_qald(tmp.path / "d.json")), to_qald_json(d));
}

TEST(Qald, MissingAnswers) {
  const auto d = parse_qald_json(R"({"dataset":{"id":"x"},"questions":[{"id":"7","question":[{"language":"en","string":"Who?"}],"query":{"sparql":"ASK WHERE { <http://a> <http://p> <http://o> . }"}}]})");
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_FALSE(d.entries[0].answers);
  EXPECT_EQ(d.entries[0].sparql.model, GraphModel::direct);
  EXPECT_EQ(d.entries[0].verbalizations.at("en"), "Who?");
}

TEST(Qald, TruncatedDocument) {
  const auto text = to_qald_json(generated_dataset(3));
  EXPECT_THROW(parse_qald_json(text.substr(0, text.size() / 2), "cut.json"), SchemaError);
  EXPECT_THROW(parse_qald_json(R"({"questions":[{"id":1}]})"), SchemaError);
}

TEST(Qald, ParseEntryReportsBadSparql) {
  const auto ok = parse_entry({"ASK WHERE { <http://a> <http://p> <http://o> . }", GraphModel::direct});
  EXPECT_TRUE(ok.query);
  const auto bad = parse_entry({"ASK WHERE { OPTIONAL { } }", GraphModel::direct});
  EXPECT_FALSE(bad.query);
  EXPECT_FALSE(bad.error.empty());
}

TEST(Void, EmptyDatasetHasZeroCounts) {
  VoidSummary s;
  const auto text = emit_void(s);
  EXPECT_NE(text.find("void:entities 0"), std::string::npos);
  EXPECT_NE(text.find("eventqa:questions 0"), std::string::npos);
  EXPECT_EQ(text, emit_void(s));
}

TEST(Void, CountsFromStats) {
  const auto d = generated_dataset(300);
  std::vector<SemanticQuery> queries;
  for (const auto& e : d.entries) queries.push_back(*parse_entry(e.sparql).query);
  VoidSummary s;
  s.questions = d.entries.size();
  s.stats = dataset_stats(queries);
  const auto text = emit_void(s);
  EXPECT_NE(text.find("eventqa:questions 300"), std::string::npos);
  EXPECT_NE(text.find("void:properties " + std::to_string(s.stats.predicates.size())), std::string::npos);
  EXPECT_NE(text.find("eventqa:events " + std::to_string(s.stats.events.size())), std::string::npos);
  EXPECT_NE(text.find("eventqa:entities " + std::to_string(s.stats.entities.size())), std::string::npos);
}

TEST(Lists, SortedUniqueAndWritten) {
  DatasetStats s;
  s.predicates = {x("dbo:commander"), x("dbo:award")};
  s.events = {x("dbr:Battle_of_Trafalgar")};
  s.entities = {x("dbr:Horatio_Nelson")};
  const auto lists = export_lists(s);
  EXPECT_EQ(lists.predicates, (std::vector<std::string>{x("dbo:award"), x("dbo:commander")}));
  TempDir tmp;
  write_lists(lists, tmp.path);
  EXPECT_EQ(read_file(tmp.path / "predicates.txt"), x("dbo:award") + "\n" + x("dbo:commander") + "\n");
  EXPECT_EQ(read_file(tmp.path / "events.txt"), x("dbr:Battle_of_Trafalgar") + "\n");
}

TEST(Lists, EmptyDatasetGivesEmptyFiles) {
  TempDir tmp;
  write_lists(export_lists({}), tmp.path);
  for (const auto* name : {"predicates.txt", "events.txt", "entities.txt"}) {
    ASSERT_TRUE(fs::exists(tmp.path / name));
    EXPECT_EQ(fs::file_size(tmp.path / name), 0u);
  }
}

TEST(Lists, DuplicatesAcrossQueriesOnce) {
  std::vector<SemanticQuery> qs(3);
  for (auto& q : qs) {
    q.graph.relations = {{QueryTerm::node(x("dbr:Battle_of_Trafalgar")), x("dbo:commander"),
                          QueryTerm::node(x("dbr:Horatio_Nelson")), Provenance::direct, {}}};
  }
  const auto lists = export_lists(dataset_stats(qs));
  EXPECT_EQ(lists.predicates, std::vector<std::string>{x("dbo:commander")});
  EXPECT_EQ(lists.entities.size() + lists.events.size(), 2u);
}

}  // namespace
}  // namespace eventqa
