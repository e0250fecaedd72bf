#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "eventqa/annotation.hpp"
#include "eventqa/qald.hpp"

namespace eventqa {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct TempLog {
  fs::path dir;
  fs::path log;
  TempLog() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("eventqa_ann_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
    log = dir / "annotations.ndjson";
  }
  ~TempLog() { fs::remove_all(dir); }
};

Dataset dataset_of(std::size_t n) {
  Dataset d{"d", {}};
  for (std::size_t i = 1; i <= n; ++i) {
    DatasetEntry e;
    e.id = std::to_string(i);
    e.sparql = {"ASK WHERE { <http://a> <http://p" + e.id + "> <http://o> . }\n", GraphModel::direct};
    d.entries.push_back(std::move(e));
  }
  return d;
}

AnnotationStore::Clock fixed_clock() {
  return [] { return std::string("2026-01-01T00:00:00.000Z"); };
}

AnnotationRecord verbalize(std::string id, std::string lang, std::string text, std::string annotator = "ana") {
  return {std::move(id), std::move(annotator), std::move(lang), AnnotationKind::verbalization, std::move(text), {}};
}

AnnotationRecord flag(std::string id, AnnotationKind kind, std::string comment, std::string annotator = "ana") {
  return {std::move(id), std::move(annotator), {}, kind, std::move(comment), {}};
}

TEST(Store, NextQueryInDatasetOrder) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  EXPECT_EQ(store.next_query("ana", "en")->entry->id, "1");
  store.submit(flag("1", AnnotationKind::flag_unnatural, "odd"));
  EXPECT_EQ(store.next_query("ana", "en")->entry->id, "2");
  store.submit(verbalize("2", "en", "Is it?"));
  store.submit(verbalize("3", "en", "Is it so?"));
  EXPECT_FALSE(store.next_query("ana", "en"));
  EXPECT_EQ(store.next_query("ana", "pt")->entry->id, "2");
}

TEST(Store, VerbalizationStatus) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  const auto status = store.submit(verbalize("1", "en", "When did the war start?"));
  EXPECT_FALSE(status.flagged);
  EXPECT_EQ(status.verbalized.at("en"), "When did the war start?");
}

TEST(Store, FlagStatus) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  EXPECT_TRUE(store.submit(flag("2", AnnotationKind::flag_not_understood, "variable is unclear")).flagged);
  EXPECT_TRUE(store.view("2")->status.flagged);
}

TEST(Store, RejectsBadRecords) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  EXPECT_THROW(store.submit(verbalize("1", "en", "")), InvalidRecord);
  EXPECT_THROW(store.submit(verbalize("1", "", "text")), InvalidRecord);
  EXPECT_THROW(store.submit(verbalize("1", "en", "text", "")), InvalidRecord);
  EXPECT_THROW(store.submit(verbalize("99", "en", "text")), UnknownQuery);
  EXPECT_TRUE(store.records().empty());
}

TEST(Store, ProgressFold) {
  TempLog tmp;
  AnnotationStore store(dataset_of(10), tmp.log, fixed_clock());
  EXPECT_EQ(store.progress().pending, 10u);
  store.submit(flag("3", AnnotationKind::flag_unnatural, "nobody asks this"));
  store.submit(verbalize("4", "en", "Who won?"));
  const auto p = store.progress();
  EXPECT_EQ(p.total, 10u);
  EXPECT_EQ(p.pending, 8u);
  EXPECT_EQ(p.flagged, 1u);
  EXPECT_EQ(p.partially_verbalized, 1u);
  EXPECT_EQ(p.fully_verbalized, 0u);
  EXPECT_EQ(p.per_language.at("en"), 1u);
}

TEST(Store, FullyVerbalized) {
  TempLog tmp;
  AnnotationStore store(dataset_of(4), tmp.log, fixed_clock());
  for (int i = 1; i <= 4; ++i) {
    for (const auto* lang : {"en", "pt", "de"}) store.submit(verbalize(std::to_string(i), lang, std::string("q ") + lang));
  }
  EXPECT_EQ(store.progress().fully_verbalized, 4u);
  EXPECT_EQ(store.progress().pending, 0u);
}

TEST(Store, ExportMergedAndReport) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  store.submit(verbalize("1", "en", "First?"));
  store.submit(verbalize("2", "pt", "Segunda?"));
  store.submit(flag("3", AnnotationKind::flag_not_understood, "no idea"));
  const auto merged = store.export_merged();
  ASSERT_EQ(merged.entries.size(), 2u);
  EXPECT_EQ(merged.entries[1].verbalizations.at("pt"), "Segunda?");
  const auto report = json::parse(store.export_report());
  ASSERT_EQ(report["flagged"].size(), 1u);
  EXPECT_EQ(report["flagged"][0]["id"], "3");
  EXPECT_EQ(to_qald_json(store.export_merged()), to_qald_json(merged));
  const auto first = store.export_report();
  EXPECT_EQ(store.export_report(), first);
}

TEST(Store, ExportWithNothingAnnotated) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  EXPECT_TRUE(store.export_merged().entries.empty());
  const auto report = json::parse(store.export_report());
  EXPECT_EQ(report["pending"].size(), 3u);
}

TEST(Store, ReplayRestoresState) {
  TempLog tmp;
  Progress before;
  {
    AnnotationStore store(dataset_of(5), tmp.log, fixed_clock());
    store.submit(verbalize("1", "en", "One?"));
    store.submit(verbalize("1", "en", "One, really?"));
    store.submit(flag("2", AnnotationKind::flag_unnatural, "odd"));
    store.submit(verbalize("3", "de", "Drei?", "bea"));
    before = store.progress();
  }
  AnnotationStore again(dataset_of(5), tmp.log, fixed_clock());
  EXPECT_EQ(again.progress(), before);
  EXPECT_EQ(again.view("1")->status.verbalized.at("en"), "One, really?");
  EXPECT_EQ(again.records().size(), 4u);
}

TEST(Store, TornTailIsDropped) {
  TempLog tmp;
  {
    AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
    store.submit(verbalize("1", "en", "One?"));
  }
  {
    std::ofstream out(tmp.log, std::ios::app);
    out << R"({"query_id":"2","annotator":"ana","lang)";
  }
  AnnotationStore again(dataset_of(3), tmp.log, fixed_clock());
  EXPECT_EQ(again.records().size(), 1u);
  again.submit(verbalize("2", "en", "Two?"));
  AnnotationStore third(dataset_of(3), tmp.log, fixed_clock());
  EXPECT_EQ(third.records().size(), 2u);
  EXPECT_EQ(third.progress().partially_verbalized, 2u);
}

TEST(Store, IdenticalResubmissionNotLogged) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  store.submit(verbalize("1", "en", "One?"));
  store.submit(verbalize("1", "en", "One?"));
  EXPECT_EQ(store.records().size(), 1u);
}

TEST(Records, JsonRoundTrip) {
  const AnnotationRecord r{"7", "ana", "pt", AnnotationKind::verbalization, "Quando o festival de música terminou?",
                           "2026-01-01T00:00:00.000Z"};
  EXPECT_EQ(record_from_json(record_to_json(r)), r);
  EXPECT_THROW(record_from_json("{\"query_id\":"), DataError);
}

TEST(Records, OptionTexts) {
  EXPECT_EQ(instructions::not_understood_option, "I do not understand the query");
  EXPECT_EQ(parse_annotation_kind("flag_not_understood"), AnnotationKind::flag_not_understood);
  EXPECT_EQ(parse_annotation_kind("unnatural"), AnnotationKind::flag_unnatural);
  EXPECT_FALSE(parse_annotation_kind("shrug"));
}

TEST(Service, ScriptedSession) {
  TempLog tmp;
  AnnotationStore store(dataset_of(3), tmp.log, fixed_clock());
  AnnotationService service(store, {"127.0.0.1", 0, {}});
  const int port = service.bind();
  ASSERT_GT(port, 0);
  std::thread server([&] { service.listen_after_bind(); });
  httplib::Client client("127.0.0.1", port);

  auto next = client.Get("/api/queries/next?annotator=ana&lang=en");
  ASSERT_TRUE(next);
  ASSERT_EQ(next->status, 200);
  const auto id = json::parse(next->body)["id"].get<std::string>();
  EXPECT_EQ(id, "1");
  for (const auto* lang : {"en", "pt", "de"}) {
    const json body{{"annotator", "ana"}, {"lang", lang}, {"text", std::string("text ") + lang}};
    auto r = client.Post("/api/queries/" + id + "/verbalization", body.dump(), "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200) << r->body;
  }
  auto f = client.Post("/api/queries/2/flag",
                       json{{"annotator", "ana"}, {"kind", "flag_not_understood"}, {"comment", "unclear"}}.dump(),
                       "application/json");
  ASSERT_TRUE(f);
  EXPECT_EQ(f->status, 200);
  auto progress = json::parse(client.Get("/api/progress")->body);
  EXPECT_EQ(progress["fully_verbalized"], 1);
  EXPECT_EQ(progress["flagged"], 1);
  EXPECT_EQ(progress["pending"], 1);
  auto exported = client.Get("/api/export");
  ASSERT_TRUE(exported);
  EXPECT_EQ(parse_qald_json(exported->body).entries.size(), 1u);
  EXPECT_EQ(client.Get("/api/queries/99")->status, 404);
  EXPECT_EQ(client.Post("/api/queries/1/verbalization", "{not json", "application/json")->status, 400);
  EXPECT_EQ(client.Post("/api/queries/1/verbalization", json{{"annotator", "ana"}, {"lang", "en"}, {"text", ""}}.dump(),
                        "application/json")
                ->status,
            400);
  service.stop();
  server.join();
}

}  // namespace
}  // namespace eventqa
