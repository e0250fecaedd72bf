#include "eventqa/qald.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>
#include "eventqa/vocabulary.hpp"

namespace eventqa {

using ordered_json = nlohmann::ordered_json;

SchemaError::SchemaError(std::string path, std::string reason)
    : DataError(path + ": " + reason), path_(std::move(path)), reason_(std::move(reason)) {}

namespace {

const std::vector<std::string>& preferred_languages() {
  static const std::vector<std::string> order = {"en", "pt", "de"};
  return order;
}

ordered_json term_json(const Term& t) {
  ordered_json j;
  switch (t.kind) {
    case TermKind::iri: j["type"] = "uri"; break;
    case TermKind::blank: j["type"] = "bnode"; break;
    case TermKind::literal: j["type"] = "literal"; break;
  }
  j["value"] = t.value;
  if (!t.language.empty()) j["xml:lang"] = t.language;
  if (!t.datatype.empty()) j["datatype"] = t.datatype;
  return j;
}

ordered_json answers_json(const AnswerSet& a) {
  ordered_json j;
  switch (a.kind) {
    case QueryType::ask:
      j["head"] = ordered_json::object();
      j["boolean"] = a.boolean;
      break;
    case QueryType::select: {
      j["head"]["vars"] = ordered_json::array({a.variable});
      auto bindings = ordered_json::array();
      for (const auto& b : a.bindings) bindings.push_back(ordered_json{{a.variable, term_json(b)}});
      j["results"]["bindings"] = std::move(bindings);
      break;
    }
    case QueryType::count: {
      j["head"]["vars"] = ordered_json::array({"count"});
      ordered_json value{{"type", "literal"}, {"value", std::to_string(a.count)}, {"datatype", vocab::xsd_integer}};
      j["results"]["bindings"] = ordered_json::array({ordered_json{{"count", std::move(value)}}});
      break;
    }
  }
  return j;
}

ordered_json query_json(const SparqlText& s) {
  return ordered_json{{"sparql", s.text}, {"model", std::string(to_string(s.model))}};
}

// Reader helpers; every failure names the JSON path.
struct Reader {
  std::string source;

  [[noreturn]] void fail(const std::string& where, const std::string& reason) const {
    throw SchemaError(source, where + ": " + reason);
  }
  const ordered_json& member(const ordered_json& j, const std::string& key, const std::string& where) const {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing \"" + key + "\"");
    return *it;
  }
  std::string string(const ordered_json& j, const std::string& where) const {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    fail(where, "expected a string");
  }

  Term term(const ordered_json& j, const std::string& where) const {
    const auto type = string(member(j, "type", where), where + ".type");
    Term t;
    if (type == "uri") {
      t.kind = TermKind::iri;
    } else if (type == "bnode") {
      t.kind = TermKind::blank;
    } else if (type == "literal" || type == "typed-literal") {
      t.kind = TermKind::literal;
    } else {
      fail(where + ".type", "unknown term type \"" + type + "\"");
    }
    t.value = string(member(j, "value", where), where + ".value");
    if (auto it = j.find("xml:lang"); it != j.end()) t.language = string(*it, where + ".xml:lang");
    if (auto it = j.find("datatype"); it != j.end()) t.datatype = string(*it, where + ".datatype");
    return t;
  }

  AnswerSet answers(const ordered_json& j, const std::string& where, const std::string& sparql) const {
    AnswerSet a;
    if (!j.is_object()) fail(where, "expected an object");
    if (auto it = j.find("boolean"); it != j.end()) {
      if (!it->is_boolean()) fail(where + ".boolean", "expected true or false");
      a.kind = QueryType::ask;
      a.boolean = it->get<bool>();
      return a;
    }
    const auto& results = member(j, "results", where);
    const auto& bindings = member(results, "bindings", where + ".results");
    if (!bindings.is_array()) fail(where + ".results.bindings", "expected an array");
    static const std::regex count_head(R"(SELECT\s*\(\s*COUNT\s*\(\s*(?:DISTINCT\s*)?\(?\s*[?$](\w+))",
                                       std::regex::icase);
    std::smatch m;
    if (std::regex_search(sparql, m, count_head)) {
      a.kind = QueryType::count;
      a.variable = m[1];
      if (bindings.size() != 1 || !bindings.front().is_object() || bindings.front().size() != 1) {
        fail(where, "a count answer holds exactly one binding");
      }
      const auto value = term(bindings.front().begin().value(), where + ".results.bindings[0]");
      try {
        std::size_t used = 0;
        a.count = std::stoull(value.value, &used);
        if (used != value.value.size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        fail(where, "count \"" + value.value + "\" is not a non-negative integer");
      }
      return a;
    }
    a.kind = QueryType::select;
    if (auto head = j.find("head"); head != j.end() && head->contains("vars") && (*head)["vars"].is_array() &&
                                    !(*head)["vars"].empty()) {
      a.variable = string((*head)["vars"].front(), where + ".head.vars[0]");
    }
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      const auto at = where + ".results.bindings[" + std::to_string(i) + "]";
      const auto& b = bindings[i];
      if (!b.is_object()) fail(at, "expected an object");
      if (b.size() != 1) fail(at, "expected one variable per binding");
      if (a.variable.empty()) a.variable = b.begin().key();
      a.bindings.push_back(term(b.begin().value(), at + "." + b.begin().key()));
    }
    a.count = a.bindings.size();
    return a;
  }

  SparqlText query(const ordered_json& j, const std::string& where) const {
    SparqlText s;
    s.text = string(member(j, "sparql", where), where + ".sparql");
    s.model = GraphModel::direct;
    if (auto it = j.find("model"); it != j.end()) {
      auto model = parse_graph_model(string(*it, where + ".model"));
      if (!model) fail(where + ".model", "expected \"reified\" or \"direct\"");
      s.model = *model;
    }
    return s;
  }

  DatasetEntry entry(const ordered_json& q, const std::string& where) const {
    DatasetEntry e;
    e.id = string(member(q, "id", where), where + ".id");
    if (auto it = q.find("question"); it != q.end()) {
      if (!it->is_array()) fail(where + ".question", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto at = where + ".question[" + std::to_string(i) + "]";
        const auto language = string(member((*it)[i], "language", at), at + ".language");
        const auto text = string(member((*it)[i], "string", at), at + ".string");
        if (!text.empty()) e.verbalizations[language] = text;
      }
    }
    e.sparql = query(member(q, "query", where), where + ".query");
    if (auto it = q.find("query_dbpedia"); it != q.end()) e.sparql_dbpedia = query(*it, where + ".query_dbpedia");
    if (auto it = q.find("answers"); it != q.end()) {
      const ordered_json* answer = &*it;
      if (it->is_array()) {
        if (it->empty()) {
          answer = nullptr;
        } else if (it->size() == 1) {
          answer = &it->front();
        } else {
          fail(where + ".answers", "expected one result document");
        }
      }
      if (answer != nullptr) e.answers = answers(*answer, where + ".answers", e.sparql.text);
    }
    if (auto it = q.find("metadata"); it != q.end()) {
      if (!it->is_object()) fail(where + ".metadata", "expected an object");
      if (auto m = it->find("seed_trace_digest"); m != it->end()) e.seed_trace_digest = string(*m, where + ".metadata");
      if (auto m = it->find("generated_at"); m != it->end()) e.generated_at = string(*m, where + ".metadata");
      if (auto m = it->find("kg_digest"); m != it->end()) e.kg_digest = string(*m, where + ".metadata");
    }
    return e;
  }
};

}  // namespace

std::string to_qald_json(const Dataset& dataset) {
  ordered_json doc;
  doc["dataset"]["id"] = dataset.id;
  auto questions = ordered_json::array();
  for (const auto& e : dataset.entries) {
    ordered_json q;
    q["id"] = e.id;
    auto strings = ordered_json::array();
    for (const auto& lang : preferred_languages()) {
      if (auto it = e.verbalizations.find(lang); it != e.verbalizations.end()) {
        strings.push_back(ordered_json{{"language", lang}, {"string", it->second}});
      }
    }
    for (const auto& [lang, text] : e.verbalizations) {
      if (std::find(preferred_languages().begin(), preferred_languages().end(), lang) == preferred_languages().end()) {
        strings.push_back(ordered_json{{"language", lang}, {"string", text}});
      }
    }
    q["question"] = std::move(strings);
    q["query"] = query_json(e.sparql);
    if (e.sparql_dbpedia) q["query_dbpedia"] = query_json(*e.sparql_dbpedia);
    if (e.answers) q["answers"] = ordered_json::array({answers_json(*e.answers)});
    ordered_json meta = ordered_json::object();
    if (!e.seed_trace_digest.empty()) meta["seed_trace_digest"] = e.seed_trace_digest;
    if (!e.generated_at.empty()) meta["generated_at"] = e.generated_at;
    if (!e.kg_digest.empty()) meta["kg_digest"] = e.kg_digest;
    if (!meta.empty()) q["metadata"] = std::move(meta);
    questions.push_back(std::move(q));
  }
  doc["questions"] = std::move(questions);
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_qald(const Dataset& dataset, const std::filesystem::path& destination) {
  write_file_atomic(destination, to_qald_json(dataset));
}

Dataset parse_qald_json(std::string_view text, const std::string& source) {
  Reader r{source};
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(source, std::string("malformed JSON: ") + e.what());
  }
  Dataset d;
  if (!doc.is_object()) r.fail("$", "expected an object");
  if (auto it = doc.find("dataset"); it != doc.end()) {
    if (auto id = it->find("id"); it->is_object() && id != it->end()) d.id = r.string(*id, "$.dataset.id");
  }
  const auto& questions = r.member(doc, "questions", "$");
  if (!questions.is_array()) r.fail("$.questions", "expected an array");
  for (std::size_t i = 0; i < questions.size(); ++i) {
    d.entries.push_back(r.entry(questions[i], "$.questions[" + std::to_string(i) + "]"));
  }
  return d;
}

Dataset read_qald(const std::filesystem::path& source) {
  return parse_qald_json(read_file(source), source.string());
}

ParsedQuery parse_entry(const SparqlText& text) {
  ParsedQuery out;
  try {
    out.query = parse(text.text, text.model);
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

namespace {

std::string turtle_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

std::string emit_void(const VoidSummary& s) {
  std::ostringstream out;
  out << "@prefix void: <http://rdfs.org/ns/void#> .\n"
      << "@prefix dcterms: <http://purl.org/dc/terms/> .\n"
      << "@prefix xsd: <" << ns::xsd << "> .\n"
      << "@prefix eventqa: <urn:eventqa:vocab#> .\n\n"
      << "<" << s.dataset_iri << "> a void:Dataset ;\n"
      << "  dcterms:title " << turtle_string(s.title) << " ;\n"
      << "  dcterms:license <" << s.license << "> ;\n"
      << "  dcterms:format \"application/json\" ;\n"
      << "  void:triples " << s.source_triples << " ;\n"
      << "  void:entities " << s.stats.events.size() + s.stats.entities.size() << " ;\n"
      << "  void:properties " << s.stats.predicates.size() << " ;\n"
      << "  eventqa:questions " << s.questions << " ;\n"
      << "  eventqa:events " << s.stats.events.size() << " ;\n"
      << "  eventqa:entities " << s.stats.entities.size() << " ;\n"
      << "  eventqa:sourceGraphDigest " << turtle_string(s.kg_digest) << " .\n";
  return out.str();
}

IriLists export_lists(const DatasetStats& stats) {
  return {{stats.predicates.begin(), stats.predicates.end()},
          {stats.events.begin(), stats.events.end()},
          {stats.entities.begin(), stats.entities.end()}};
}

void write_lists(const IriLists& lists, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());
  auto write = [&](const char* name, const std::vector<std::string>& items) {
    std::string text;
    for (const auto& i : items) text += i + "\n";
    write_file_atomic(directory / name, text);
  };
  write("predicates.txt", lists.predicates);
  write("events.txt", lists.events);
  write("entities.txt", lists.entities);
}

}  // namespace eventqa
