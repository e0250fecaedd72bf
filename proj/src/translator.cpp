#include "eventqa/translator.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "eventqa/evaluator.hpp"
#include "eventqa/ntriples.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa {

std::string_view to_string(FailureCategory category) {
  return category == FailureCategory::structural ? "structural" : "coverage";
}

MappingTable MappingTable::defaults() {
  MappingTable m;
  m.begin_predicates = {vocab::sem_begin};
  m.end_predicates = {vocab::sem_end};
  m.begin_candidates = {iri(ns::dbp, "year"), iri(ns::dbo, "date"), iri(ns::dbo, "startDate")};
  m.end_candidates = {iri(ns::dbp, "year"), iri(ns::dbo, "date"), iri(ns::dbo, "endDate")};
  m.event_type = vocab::dbo_event;
  return m;
}

MappingTable MappingTable::from_same_as(std::istream& in, const std::string& same_as_predicate) {
  const std::string& predicate = same_as_predicate.empty() ? vocab::owl_same_as : same_as_predicate;
  MappingTable m = defaults();
  NTriplesReader reader(in, ParseMode::strict);
  while (auto t = reader.next()) {
    if (t->predicate.value != predicate || !t->subject.is_iri() || !t->object.is_iri()) continue;
    auto [it, inserted] = m.same_as.emplace(t->subject.value, t->object.value);
    if (!inserted && it->second != t->object.value) {
      throw DataError("same-as mapping is not functional: " + t->subject.value + " maps to " + it->second +
                      " and " + t->object.value);
    }
  }
  return m;
}

MappingTable MappingTable::load(const std::filesystem::path& path, const std::string& same_as_predicate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return from_same_as(in, same_as_predicate);
}

MappingTable MappingTable::from_graph(const KnowledgeGraph& kg) {
  MappingTable m = defaults();
  m.begin_predicates = kg.schema().time_begin;
  m.end_predicates = kg.schema().time_end;
  for (NodeIndex n = 0; n < kg.node_count(); ++n) {
    const auto& node = kg.node(n);
    if (!node.same_as.empty()) m.same_as.emplace(node.iri, node.same_as.front());
  }
  return m;
}

void MappingTable::load_temporal_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto expand = [&](const std::string& item) {
    std::string v = item;
    if (v.size() >= 2 && v.front() == '<' && v.back() == '>') return v.substr(1, v.size() - 2);
    if (v.starts_with("http://") || v.starts_with("https://")) return v;
    if (auto full = PrefixTable::standard().expand(v)) return *full;
    throw DataError("line " + std::to_string(line_no) + ": cannot expand '" + v + "'");
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    std::vector<std::string> items;
    std::istringstream values(line.substr(eq + 1));
    for (std::string item; std::getline(values, item, ',');) {
      item = trim(item);
      if (!item.empty()) items.push_back(expand(item));
    }
    if (key == "begin") {
      begin_candidates = items;
    } else if (key == "end") {
      end_candidates = items;
    } else if (key == "source.begin") {
      begin_predicates = items;
    } else if (key == "source.end") {
      end_predicates = items;
    } else if (key == "event_type") {
      event_type = items.empty() ? std::string() : items.front();
    } else {
      throw DataError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate();
}

void MappingTable::validate() const {
  if (begin_candidates.empty() || end_candidates.empty()) {
    throw DataError("temporal candidate lists must not be empty");
  }
}

bool MappingTable::is_target(const std::string& iri) const {
  if (!targets_) {
    targets_.emplace();
    for (const auto& [source, target] : same_as) targets_->insert(target);
  }
  return targets_->contains(iri);
}

namespace {

QueryTerm map_term(const QueryTerm& t, const MappingTable& m) {
  if (!t.is_node()) return t;
  if (t.via_same_as) {
    if (m.is_target(t.value)) return QueryTerm::node(t.value);
    throw UnmappedEntity(t.value);
  }
  if (auto it = m.same_as.find(t.value); it != m.same_as.end()) return QueryTerm::node(it->second);
  if (m.is_target(t.value)) return QueryTerm::node(t.value);
  throw UnmappedEntity(t.value);
}

bool has_answer(const KnowledgeGraph& kg, const SemanticQuery& q) {
  const auto a = evaluate(kg, q);
  return q.type == QueryType::ask ? a.boolean : a.count > 0;
}

}  // namespace

SemanticQuery translate(const SemanticQuery& q, const MappingTable& m, const KnowledgeGraph* target_kg) {
  if (q.model == GraphModel::direct) return q;
  QueryGraph graph;
  for (const auto& r : q.graph.relations) {
    if (r.predicate.empty()) throw MissingRoleType(r.source_id.empty() ? r.subject.value : r.source_id);
    QueryRelation out;
    out.subject = map_term(r.subject, m);
    out.predicate = r.predicate;
    out.object = map_term(r.object, m);
    out.provenance = Provenance::direct;
    out.source_id = r.source_id;
    graph.relations.push_back(std::move(out));
  }
  graph.variables = q.graph.variables;
  for (auto& v : graph.variables) {
    if (v.type.empty() && v.role == VariableRole::node && v.name.starts_with("event")) v.type = m.event_type;
  }

  std::vector<std::optional<TemporalConstraint>> options{std::nullopt};
  if (q.constraint) {
    const auto& c = *q.constraint;
    if (c.relation) {
      const auto& anchor = q.graph.relations.at(*c.relation);
      throw UnmappedTemporal(anchor.source_id.empty() ? "statement " + std::to_string(*c.relation + 1) : anchor.source_id,
                             FailureCategory::structural);
    }
    auto base = c;
    base.term = map_term(c.term, m);
    const auto contains = [&](const std::vector<std::string>& list) {
      return std::find(list.begin(), list.end(), c.predicate) != list.end();
    };
    options.clear();
    if (contains(m.begin_predicates) || contains(m.end_predicates)) {
      for (const auto& candidate : contains(m.begin_predicates) ? m.begin_candidates : m.end_candidates) {
        auto option = base;
        option.predicate = candidate;
        options.emplace_back(std::move(option));
      }
    } else {
      options.emplace_back(std::move(base));
    }
  }

  auto build = [&](const std::optional<TemporalConstraint>& c) {
    return make_query(graph, q.type, c, GraphModel::direct, q.trace);
  };
  if (target_kg == nullptr) return build(options.front());
  for (const auto& option : options) {
    auto candidate = build(option);
    if (has_answer(*target_kg, candidate)) return candidate;
  }
  if (q.constraint && !has_answer(*target_kg, build(std::nullopt))) throw NotCoveredByTarget();
  if (q.constraint) throw UnmappedTemporal(q.constraint->term.value, FailureCategory::coverage);
  throw NotCoveredByTarget();
}

TranslationResult translate_dataset(std::span<const SemanticQuery> queries, const MappingTable& m,
                                    const KnowledgeGraph* target_kg, std::span<const std::string> ids) {
  TranslationResult out;
  out.report.total = queries.size();
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const std::string id = i < ids.size() ? ids[i] : std::to_string(i + 1);
    try {
      out.queries.emplace_back(translate(queries[i], m, target_kg));
      ++out.report.translated;
    } catch (const TranslationError& e) {
      out.queries.emplace_back(std::nullopt);
      out.report.failures.push_back({id, e.what(), e.category()});
    }
  }
  return out;
}

}  // namespace eventqa
