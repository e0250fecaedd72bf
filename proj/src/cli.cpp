#include "eventqa/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "eventqa/annotation.hpp"
#include "eventqa/evaluator.hpp"
#include "eventqa/fixture.hpp"
#include "eventqa/generator.hpp"
#include "eventqa/metrics.hpp"
#include "eventqa/ntriples.hpp"
#include "eventqa/qald.hpp"
#include "eventqa/schema.hpp"
#include "eventqa/sparql.hpp"
#include "eventqa/translator.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa {
namespace {

using ordered_json = nlohmann::ordered_json;

// Bad flag values found after parsing; exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GraphSource {
  std::string kg;
  std::string schema;
  bool fixture = false;
  std::size_t fixture_events = 500;
  std::uint64_t fixture_seed = 20;
  bool lenient = false;

  void attach(CLI::App* cmd, const std::string& kg_help) {
    cmd->add_option("--kg", kg, kg_help);
    cmd->add_option("--schema", schema, "eventkg, dbpedia, or a schema file");
    cmd->add_flag("--fixture", fixture, "use the bundled synthetic graph");
    cmd->add_option("--fixture-events", fixture_events, "event count of the synthetic graph");
    cmd->add_option("--fixture-seed", fixture_seed, "seed of the synthetic graph");
    cmd->add_flag("--lenient", lenient, "skip malformed N-Triples lines");
  }

  [[nodiscard]] bool given() const { return fixture || !kg.empty(); }

  KnowledgeGraph load(GraphModel model, std::ostream& err) const {
    if (fixture) {
      if (fixture_events == 0) throw UsageError("--fixture-events must be at least 1");
      return fixture_graph({fixture_events, fixture_seed}, model);
    }
    if (kg.empty()) throw UsageError("--kg or --fixture is required");
    const auto config = schema.empty() ? (model == GraphModel::reified ? SchemaConfig::eventkg() : SchemaConfig::dbpedia())
                                       : SchemaConfig::resolve(schema);
    GraphBuilder builder(config);
    std::vector<MalformedLine> diagnostics;
    try {
      for_each_triple(kg, lenient ? ParseMode::lenient : ParseMode::strict,
                      [&](Triple&& t) { builder.add(std::move(t)); }, &diagnostics);
    } catch (const MalformedLine& e) {
      throw DataError(kg + ": " + e.what());
    }
    for (const auto& d : diagnostics) err << kg << ": skipped " << d.what() << "\n";
    return std::move(builder).build();
  }
};

std::string timestamp_from(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0') return {};
  char* end = nullptr;
  const long long seconds = std::strtoll(epoch, &end, 10);
  if (*end != '\0') throw UsageError("SOURCE_DATE_EPOCH must be an integer");
  const std::chrono::sys_seconds t{std::chrono::seconds{seconds}};
  const auto days = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{days};
  const std::chrono::hh_mm_ss hms{t - days};
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()), static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buffer;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        try {
          for (std::size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          errors[j] = std::current_exception();
          next = n;
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_ingest_check(const GraphSource& src, const std::string& model_name, std::ostream& out, std::ostream& err) {
  const auto model = parse_graph_model(model_name);
  if (!model) throw UsageError("--model must be reified or direct");
  const auto kg = src.load(*model, err);
  std::size_t reified = 0;
  std::size_t temporal = 0;
  for (const auto& r : kg.relations()) {
    reified += r.provenance == Provenance::reified;
    temporal += kg.is_temporal_fact(r);
  }
  out << "triples\t" << kg.triple_count() << "\n"
      << "nodes\t" << kg.node_count() << "\n"
      << "events\t" << kg.events().size() << "\n"
      << "entities\t" << kg.entities().size() << "\n"
      << "relations\t" << kg.relation_count() << "\n"
      << "reified_relations\t" << reified << "\n"
      << "temporal_facts\t" << temporal << "\n"
      << "literals\t" << kg.literal_count() << "\n"
      << "digest\t" << kg.digest() << "\n";
  if (auto problem = check_adjacency(kg)) throw DataError("adjacency check failed: " + *problem);
  return 0;
}

struct GenerateArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t max_relations = 2;
  std::string model = "reified";
  std::string out;
  unsigned jobs = 1;
  double p_temporal = 0.5;
  std::string weights = "1,1,1";
  std::size_t max_attempts = 100;
  std::string timestamp;
  std::string dataset_id = "event-qa";
  bool no_answers = false;
};

int cmd_generate(const GraphSource& src, GenerateArgs a, std::ostream& out, std::ostream& err) {
  if (a.n == 0) throw UsageError("--n must be at least 1");
  if (const char* env = std::getenv("EVENTQA_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    a.seed = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("EVENTQA_SEED must be an unsigned integer");
  }
  const auto model = parse_graph_model(a.model);
  if (!model) throw UsageError("--model must be reified or direct");
  GeneratorConfig config;
  config.max_relations = a.max_relations;
  config.temporal_constraint_probability = a.p_temporal;
  config.max_attempts_per_query = a.max_attempts;
  config.rng_seed = a.seed;
  config.model = *model;
  const auto weights = split_list(a.weights);
  if (weights.size() != 3) throw UsageError("--weights takes three comma-separated numbers");
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      config.type_weights[i] = std::stod(weights[i]);
    } catch (const std::exception&) {
      throw UsageError("--weights takes three comma-separated numbers");
    }
  }
  try {
    config.validate();
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }
  const auto timestamp = timestamp_from(a.timestamp);

  const auto kg = src.load(*model, err);
  const auto queries = generate_dataset(kg, a.n, config, a.jobs);
  std::vector<std::optional<AnswerSet>> answers(queries.size());
  if (!a.no_answers) parallel_for(queries.size(), a.jobs, [&](std::size_t i) { answers[i] = evaluate(kg, queries[i]); });

  Dataset d;
  d.id = a.dataset_id;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    DatasetEntry e;
    e.id = std::to_string(i + 1);
    e.sparql = emit(queries[i]);
    e.answers = answers[i];
    e.seed_trace_digest = queries[i].trace.digest();
    e.generated_at = timestamp;
    e.kg_digest = kg.digest();
    d.entries.push_back(std::move(e));
  }
  if (a.out.empty() || a.out == "-") {
    out << to_qald_json(d);
  } else {
    write_qald(d, a.out);
  }
  err << "generated " << queries.size() << " queries (seed " << a.seed << ", model " << to_string(*model) << ")\n";
  return 0;
}

int cmd_execute(const GraphSource& src, const std::string& dataset_path, bool write_answers, bool dbpedia,
                unsigned jobs, std::ostream& out, std::ostream& err) {
  auto d = read_qald(dataset_path);
  // With --query dbpedia only translated entries run, and stored answers stay untouched.
  if (dbpedia && write_answers) throw UsageError("--write-answers applies to the primary query only");
  auto text_of = [&](const DatasetEntry& e) -> const SparqlText* {
    if (!dbpedia) return &e.sparql;
    return e.sparql_dbpedia ? &*e.sparql_dbpedia : nullptr;
  };
  std::optional<GraphModel> model;
  for (const auto& e : d.entries) {
    const auto* text = text_of(e);
    if (text == nullptr) continue;
    if (model && *model != text->model) throw DataError(dataset_path + ": entries mix graph models");
    model = text->model;
  }
  const auto kg = src.load(model.value_or(GraphModel::reified), err);
  std::vector<std::optional<AnswerSet>> answers(d.entries.size());
  std::vector<std::string> failures(d.entries.size());
  parallel_for(d.entries.size(), jobs, [&](std::size_t i) {
    const auto* text = text_of(d.entries[i]);
    if (text == nullptr) return;
    auto parsed = parse_entry(*text);
    if (!parsed.query) {
      failures[i] = parsed.error;
      return;
    }
    try {
      answers[i] = evaluate(kg, *parsed.query);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });
  std::size_t failed = 0;
  std::size_t executed = 0;
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    auto& e = d.entries[i];
    if (text_of(e) == nullptr) continue;
    ++executed;
    if (!failures[i].empty()) {
      ++failed;
      err << dataset_path << ": question " << e.id << ": " << failures[i] << "\n";
      continue;
    }
    const auto& a = *answers[i];
    out << e.id << "\t";
    switch (a.kind) {
      case QueryType::ask: out << (a.boolean ? "true" : "false"); break;
      case QueryType::select: out << a.bindings.size() << " bindings"; break;
      case QueryType::count: out << "count " << a.count; break;
    }
    if (!dbpedia && e.answers && !(*e.answers == a)) out << "\t(differs from stored answers)";
    out << "\n";
    if (!dbpedia) e.answers = a;
  }
  if (write_answers) {
    for (auto& e : d.entries) {
      if (e.answers) e.kg_digest = kg.digest();
    }
    write_qald(d, dataset_path);
  }
  err << "executed " << executed - failed << " of " << executed << " queries\n";
  return 0;
}

struct TranslateArgs {
  std::string dataset;
  std::string mappings;
  std::string target_kg;
  std::string target_schema = "dbpedia";
  std::string temporal_config;
  std::string report;
  std::string out;
  bool fixture = false;
  std::size_t fixture_events = 500;
  std::uint64_t fixture_seed = 20;
};

int cmd_translate(const TranslateArgs& a, std::ostream& out, std::ostream& err) {
  auto d = read_qald(a.dataset);
  MappingTable m = MappingTable::defaults();
  if (!a.mappings.empty()) {
    m = MappingTable::load(a.mappings);
  } else if (a.fixture) {
    std::istringstream in(fixture_same_as({a.fixture_events, a.fixture_seed}));
    m = MappingTable::from_same_as(in);
  } else {
    throw UsageError("--mappings or --fixture is required");
  }
  if (!a.temporal_config.empty()) m.load_temporal_config(read_file(a.temporal_config));
  std::optional<KnowledgeGraph> target;
  if (!a.target_kg.empty()) {
    GraphSource src;
    src.kg = a.target_kg;
    src.schema = a.target_schema;
    target = src.load(GraphModel::direct, err);
  } else if (a.fixture) {
    target = fixture_graph({a.fixture_events, a.fixture_seed}, GraphModel::direct);
  }

  std::vector<SemanticQuery> queries;
  std::vector<std::string> ids;
  TranslationReport parse_failures;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    auto parsed = parse_entry(d.entries[i].sparql);
    if (!parsed.query) {
      parse_failures.failures.push_back({d.entries[i].id, parsed.error, FailureCategory::structural});
      continue;
    }
    queries.push_back(std::move(*parsed.query));
    ids.push_back(d.entries[i].id);
    positions.push_back(i);
  }
  auto result = translate_dataset(queries, m, target ? &*target : nullptr, ids);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    auto& e = d.entries[positions[k]];
    if (result.queries[k]) {
      e.sparql_dbpedia = emit(*result.queries[k]);
    } else {
      e.sparql_dbpedia.reset();
    }
  }
  auto& report = result.report;
  report.total += parse_failures.failures.size();
  report.failures.insert(report.failures.end(), parse_failures.failures.begin(), parse_failures.failures.end());

  ordered_json j;
  j["total"] = report.total;
  j["translated"] = report.translated;
  auto failures = ordered_json::array();
  for (const auto& f : report.failures) {
    failures.push_back(ordered_json{{"id", f.id}, {"reason", f.reason}, {"category", std::string(to_string(f.category))}});
  }
  j["failures"] = std::move(failures);
  const auto report_text = j.dump(2) + "\n";
  if (a.report.empty() || a.report == "-") {
    out << report_text;
  } else {
    write_file_atomic(a.report, report_text);
  }
  write_qald(d, a.out.empty() ? a.dataset : a.out);
  err << "translated " << report.translated << " of " << report.total << " queries\n";
  return 0;
}

std::vector<SemanticQuery> parsed_queries(const Dataset& d, const std::string& path, std::ostream& err,
                                          std::vector<std::size_t>* positions = nullptr) {
  std::vector<SemanticQuery> out;
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    auto parsed = parse_entry(d.entries[i].sparql);
    if (!parsed.query) {
      err << path << ": question " << d.entries[i].id << ": " << parsed.error << "\n";
      continue;
    }
    out.push_back(std::move(*parsed.query));
    if (positions) positions->push_back(i);
  }
  return out;
}

std::string fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", v);
  return buffer;
}

int cmd_metrics(const std::string& path, const std::string& langs, const std::string& format, std::ostream& out,
                std::ostream& err) {
  const auto d = read_qald(path);
  const auto queries = parsed_queries(d, path, err);
  ordered_json j;
  std::vector<std::pair<std::string, std::string>> rows;
  auto record = [&](const std::string& key, std::optional<double> value) {
    j[key] = value ? ordered_json(*value) : ordered_json(nullptr);
    rows.emplace_back(key, value ? fixed(*value) : "-");
  };
  j["questions"] = d.entries.size();
  j["parsed_queries"] = queries.size();
  record("complexity", queries.empty() ? std::nullopt : std::optional(complexity(queries)));
  record("query_diversity", queries.size() < 2 ? std::nullopt : std::optional(query_diversity(queries)));
  for (const auto& lang : split_list(langs)) {
    std::vector<std::string> texts;
    for (const auto& e : d.entries) {
      auto it = e.verbalizations.find(lang);
      texts.push_back(it == e.verbalizations.end() ? std::string() : it->second);
    }
    std::optional<double> value;
    try {
      value = verbalization_diversity(texts, lang);
    } catch (const MissingLanguage&) {
    } catch (const SingletonSet&) {
    }
    record("verbalization_diversity_" + lang, value);
  }
  if (format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << "questions\t" << d.entries.size() << "\n";
    for (const auto& [k, v] : rows) out << k << "\t" << v << "\n";
  }
  return 0;
}

DatasetStats stats_of(const Dataset& d, const std::string& path, const KnowledgeGraph* kg, std::ostream& err) {
  std::vector<std::size_t> positions;
  const auto queries = parsed_queries(d, path, err, &positions);
  std::vector<AnswerSet> answers;
  for (auto i : positions) answers.push_back(d.entries[i].answers.value_or(AnswerSet{}));
  return dataset_stats(queries, kg, answers);
}

int cmd_stats(const GraphSource& src, const std::string& path, std::size_t top, const std::string& format,
              std::ostream& out, std::ostream& err) {
  const auto d = read_qald(path);
  std::optional<KnowledgeGraph> kg;
  if (src.given()) kg = src.load(d.entries.empty() ? GraphModel::reified : d.entries.front().sparql.model, err);
  const auto s = stats_of(d, path, kg ? &*kg : nullptr, err);
  const auto shown = std::min(top, s.predicate_ranking.size());
  if (format == "json") {
    ordered_json j{{"events", s.events.size()}, {"entities", s.entities.size()}, {"predicates", s.predicates.size()}};
    auto ranking = ordered_json::array();
    for (std::size_t i = 0; i < shown; ++i) {
      ranking.push_back(ordered_json{{"predicate", s.predicate_ranking[i].first}, {"count", s.predicate_ranking[i].second}});
    }
    j["ranking"] = std::move(ranking);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "events\t" << s.events.size() << "\n"
      << "entities\t" << s.entities.size() << "\n"
      << "predicates\t" << s.predicates.size() << "\n";
  for (std::size_t i = 0; i < shown; ++i) {
    out << (PrefixTable::standard().abbreviate(s.predicate_ranking[i].first).value_or(s.predicate_ranking[i].first))
        << "\t" << s.predicate_ranking[i].second << "\n";
  }
  return 0;
}

int cmd_export(const GraphSource& src, const std::string& path, bool void_flag, const std::string& void_out,
               const std::string& lists_dir, std::ostream& out, std::ostream& err) {
  if (!void_flag && lists_dir.empty()) throw UsageError("nothing to export: give --void and/or --lists");
  const auto d = read_qald(path);
  std::optional<KnowledgeGraph> kg;
  if (src.given()) kg = src.load(d.entries.empty() ? GraphModel::reified : d.entries.front().sparql.model, err);
  const auto s = stats_of(d, path, kg ? &*kg : nullptr, err);
  if (!lists_dir.empty()) write_lists(export_lists(s), lists_dir);
  if (void_flag) {
    VoidSummary summary;
    summary.title = d.id.empty() ? summary.title : d.id;
    summary.questions = d.entries.size();
    summary.stats = s;
    if (kg) {
      summary.source_triples = kg->triple_count();
      summary.kg_digest = kg->digest();
    } else if (!d.entries.empty()) {
      summary.kg_digest = d.entries.front().kg_digest;
    }
    const auto text = emit_void(summary);
    if (!void_out.empty()) {
      write_file_atomic(void_out, text);
    } else if (!lists_dir.empty()) {
      write_file_atomic(std::filesystem::path(lists_dir) / "void.ttl", text);
    } else {
      out << text;
    }
  }
  return 0;
}

std::atomic<AnnotationService*> active_service{nullptr};

void stop_service(int) {
  if (auto* s = active_service.load()) s->stop();
}

int cmd_serve(const std::string& dataset, const std::string& store_path, const std::string& host, int port,
              const std::string& static_dir, std::ostream& out, std::ostream& err) {
  AnnotationStore store(read_qald(dataset), store_path);
  AnnotationService service(store, {host, port, static_dir});
  const int bound = service.bind();
  if (bound < 0) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
  err << "serving " << dataset << " with log " << store_path << "\n";
  active_service = &service;
  std::signal(SIGINT, stop_service);
  std::signal(SIGTERM, stop_service);
  service.listen_after_bind();
  active_service = nullptr;
  return 0;
}

int cmd_fixture(const std::string& model_name, std::size_t events, std::uint64_t seed, const std::string& out_path,
                const std::string& same_as_path, std::ostream& out) {
  const auto model = parse_graph_model(model_name);
  if (!model) throw UsageError("--model must be reified or direct");
  if (events == 0) throw UsageError("--events must be at least 1");
  const auto text = fixture_ntriples({events, seed}, *model);
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    write_file_atomic(out_path, text);
  }
  if (!same_as_path.empty()) write_file_atomic(same_as_path, fixture_same_as({events, seed}));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Event-centric question answering benchmark toolkit", "eventqa"};
  app.require_subcommand(1);

  GraphSource ingest_src;
  std::string ingest_model = "reified";
  auto* ingest = app.add_subcommand("ingest-check", "parse a graph dump and report its shape");
  ingest_src.attach(ingest, "N-Triples file (.nt or .nt.gz)");
  ingest->add_option("--model", ingest_model, "default schema: reified (eventkg) or direct (dbpedia)");

  GraphSource gen_src;
  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "generate a query dataset by random walks");
  gen_src.attach(generate, "source N-Triples file");
  generate->add_option("--n", gen.n, "number of queries")->required();
  generate->add_option("--seed", gen.seed, "RNG seed (EVENTQA_SEED overrides)");
  generate->add_option("--max-relations", gen.max_relations, "relations per query");
  generate->add_option("--model", gen.model, "reified or direct");
  generate->add_option("--out", gen.out, "QALD JSON output (default: stdout)");
  generate->add_option("--jobs", gen.jobs, "worker threads");
  generate->add_option("--temporal-probability", gen.p_temporal, "chance of a temporal constraint");
  generate->add_option("--weights", gen.weights, "ASK,SELECT,COUNT weights");
  generate->add_option("--max-attempts", gen.max_attempts, "attempts per query");
  generate->add_option("--timestamp", gen.timestamp, "generation timestamp recorded in metadata");
  generate->add_option("--dataset-id", gen.dataset_id, "dataset id");
  generate->add_flag("--no-answers", gen.no_answers, "skip gold answers");

  GraphSource exec_src;
  std::string exec_dataset;
  bool write_answers = false;
  std::string exec_query = "primary";
  unsigned exec_jobs = 1;
  auto* execute = app.add_subcommand("execute", "compute gold answers");
  exec_src.attach(execute, "graph N-Triples file");
  execute->add_option("--dataset", exec_dataset, "QALD JSON dataset")->required();
  execute->add_flag("--write-answers", write_answers, "store answers in the dataset");
  execute->add_option("--query", exec_query, "primary or dbpedia")->check(CLI::IsMember({"primary", "dbpedia"}));
  execute->add_option("--jobs", exec_jobs, "worker threads");

  TranslateArgs tr;
  auto* translate = app.add_subcommand("translate", "translate reified queries to the direct model");
  translate->add_option("--dataset", tr.dataset, "QALD JSON dataset")->required();
  translate->add_option("--mappings", tr.mappings, "N-Triples owl:sameAs mapping file");
  translate->add_option("--target-kg", tr.target_kg, "target graph used to probe coverage");
  translate->add_option("--target-schema", tr.target_schema, "schema of the target graph");
  translate->add_option("--temporal-config", tr.temporal_config, "temporal predicate candidates");
  translate->add_option("--report", tr.report, "JSON report (default: stdout)");
  translate->add_option("--out", tr.out, "output dataset (default: rewrite --dataset)");
  translate->add_flag("--fixture", tr.fixture, "use the synthetic graph's mappings and direct variant");
  translate->add_option("--fixture-events", tr.fixture_events, "event count of the synthetic graph");
  translate->add_option("--fixture-seed", tr.fixture_seed, "seed of the synthetic graph");

  std::string metrics_dataset;
  std::string langs = "en,pt,de";
  std::string metrics_format = "text";
  auto* metrics = app.add_subcommand("metrics", "complexity and diversity");
  metrics->add_option("--dataset", metrics_dataset, "QALD JSON dataset")->required();
  metrics->add_option("--langs", langs, "verbalization languages");
  metrics->add_option("--format", metrics_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  GraphSource stats_src;
  std::string stats_dataset;
  std::size_t top = 10;
  std::string stats_format = "text";
  auto* stats = app.add_subcommand("stats", "distinct events, entities and predicates");
  stats_src.attach(stats, "graph used to classify events");
  stats->add_option("--dataset", stats_dataset, "QALD JSON dataset")->required();
  stats->add_option("--top", top, "predicates shown in the ranking");
  stats->add_option("--format", stats_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  GraphSource export_src;
  std::string export_dataset;
  bool void_flag = false;
  std::string void_out;
  std::string lists_dir;
  auto* exp = app.add_subcommand("export", "VoID description and IRI lists");
  export_src.attach(exp, "source graph (triple count and event classification)");
  exp->add_option("--dataset", export_dataset, "QALD JSON dataset")->required();
  exp->add_flag("--void", void_flag, "emit a VoID description");
  exp->add_option("--void-out", void_out, "VoID output file");
  exp->add_option("--lists", lists_dir, "directory for predicates.txt, events.txt, entities.txt");

  std::string serve_dataset;
  std::string store_path = "annotations.ndjson";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "annotation service");
  serve->add_option("--dataset", serve_dataset, "QALD JSON dataset")->required();
  serve->add_option("--store", store_path, "NDJSON annotation log");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port (0 picks a free one)");
  serve->add_option("--static", static_dir, "directory served at /");

  std::string fixture_model = "reified";
  std::size_t fixture_events = 500;
  std::uint64_t fixture_seed = 20;
  std::string fixture_out;
  std::string fixture_same_as_out;
  auto* fixture = app.add_subcommand("fixture", "write the synthetic graph as N-Triples");
  fixture->add_option("--model", fixture_model, "reified or direct");
  fixture->add_option("--events", fixture_events, "event count");
  fixture->add_option("--seed", fixture_seed, "seed");
  fixture->add_option("--out", fixture_out, "output file (default: stdout)");
  fixture->add_option("--same-as", fixture_same_as_out, "also write the owl:sameAs mapping file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 1;
  }

  try {
    if (ingest->parsed()) return cmd_ingest_check(ingest_src, ingest_model, out, err);
    if (generate->parsed()) return cmd_generate(gen_src, gen, out, err);
    if (execute->parsed()) return cmd_execute(exec_src, exec_dataset, write_answers, exec_query == "dbpedia", exec_jobs, out, err);
    if (translate->parsed()) return cmd_translate(tr, out, err);
    if (metrics->parsed()) return cmd_metrics(metrics_dataset, langs, metrics_format, out, err);
    if (stats->parsed()) return cmd_stats(stats_src, stats_dataset, top, stats_format, out, err);
    if (exp->parsed()) return cmd_export(export_src, export_dataset, void_flag, void_out, lists_dir, out, err);
    if (serve->parsed()) return cmd_serve(serve_dataset, store_path, host, port, static_dir, out, err);
    if (fixture->parsed()) {
      return cmd_fixture(fixture_model, fixture_events, fixture_seed, fixture_out, fixture_same_as_out, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SchemaConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace eventqa
