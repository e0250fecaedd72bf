#include "eventqa/schema.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "eventqa/vocabulary.hpp"

namespace eventqa {

namespace {

bool contains(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string expand_term(std::string_view token, std::size_t line_no) {
  token = trim(token);
  if (token.size() >= 2 && token.front() == '<' && token.back() == '>') {
    return std::string(token.substr(1, token.size() - 2));
  }
  if (token.starts_with("http://") || token.starts_with("https://") || token.starts_with("urn:")) {
    return std::string(token);
  }
  if (auto full = PrefixTable::standard().expand(token)) return *full;
  throw SchemaConfigError("schema line " + std::to_string(line_no) + ": cannot expand '" +
                          std::string(token) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto pos = s.find(sep);
    auto item = trim(s.substr(0, pos));
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::string_view unquote(std::string_view v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

}  // namespace

bool SchemaConfig::is_event_type_predicate(std::string_view predicate) const {
  return std::any_of(event_types.begin(), event_types.end(),
                     [&](const auto& pair) { return pair.first == predicate; });
}

bool SchemaConfig::is_temporal_predicate(std::string_view predicate) const {
  return is_begin_predicate(predicate) || is_end_predicate(predicate);
}

bool SchemaConfig::is_begin_predicate(std::string_view predicate) const {
  return contains(time_begin, predicate);
}

bool SchemaConfig::is_end_predicate(std::string_view predicate) const {
  return contains(time_end, predicate);
}

bool SchemaConfig::is_label_predicate(std::string_view predicate) const {
  return contains(labels, predicate);
}

void SchemaConfig::validate() const {
  if (event_types.empty()) throw SchemaConfigError("schema: event_type is required");
  const int reify_parts = !reify_subject.empty() + !reify_object.empty() + !reify_role.empty();
  if (reify_parts != 0 && reify_parts != 3) {
    throw SchemaConfigError("schema: reify.subject, reify.object and reify.role go together");
  }
  if (reified()) {
    if (time_begin.empty() || time_end.empty()) {
      throw SchemaConfigError("schema: time.begin and time.end are required for reified input");
    }
    if (labels.empty()) throw SchemaConfigError("schema: label is required for reified input");
    if (same_as.empty()) throw SchemaConfigError("schema: same_as is required for reified input");
  }
  for (const auto& b : time_begin) {
    if (contains(time_end, b)) {
      throw SchemaConfigError("schema: '" + b + "' is both a begin and an end predicate");
    }
  }
}

SchemaConfig SchemaConfig::eventkg() {
  SchemaConfig s;
  s.event_types = {{vocab::rdf_type, vocab::sem_event}};
  s.reify_subject = vocab::rdf_subject;
  s.reify_object = vocab::rdf_object;
  s.reify_role = vocab::sem_role_type;
  s.time_begin = {vocab::sem_begin};
  s.time_end = {vocab::sem_end};
  s.labels = {vocab::rdfs_label};
  s.same_as = vocab::owl_same_as;
  return s;
}

SchemaConfig SchemaConfig::dbpedia() {
  SchemaConfig s;
  s.event_types = {{vocab::rdf_type, vocab::dbo_event}};
  s.time_begin = {iri(ns::dbp, "year"), iri(ns::dbo, "date"), iri(ns::dbo, "startDate")};
  s.time_end = {iri(ns::dbo, "endDate")};
  s.labels = {vocab::rdfs_label};
  s.same_as = vocab::owl_same_as;
  return s;
}

SchemaConfig SchemaConfig::parse(std::string_view text) {
  SchemaConfig s;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw SchemaConfigError("schema line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = unquote(trim(line.substr(0, eq)));
    auto value = unquote(trim(line.substr(eq + 1)));
    auto items = split(value, ',');
    auto single = [&]() -> std::string {
      if (items.size() != 1) {
        throw SchemaConfigError("schema line " + std::to_string(line_no) + ": '" +
                                std::string(key) + "' takes exactly one value");
      }
      return expand_term(items.front(), line_no);
    };
    auto many = [&] {
      std::vector<std::string> out;
      for (auto item : items) out.push_back(expand_term(item, line_no));
      return out;
    };
    if (key == "event_type") {
      for (auto item : items) {
        auto parts = split(item, ' ');
        if (parts.size() != 2) {
          throw SchemaConfigError("schema line " + std::to_string(line_no) +
                                  ": event_type entries are 'predicate value'");
        }
        s.event_types.emplace_back(expand_term(parts[0], line_no), expand_term(parts[1], line_no));
      }
    } else if (key == "reify.subject") {
      s.reify_subject = single();
    } else if (key == "reify.object") {
      s.reify_object = single();
    } else if (key == "reify.role") {
      s.reify_role = single();
    } else if (key == "time.begin") {
      s.time_begin = many();
    } else if (key == "time.end") {
      s.time_end = many();
    } else if (key == "label") {
      s.labels = many();
    } else if (key == "same_as") {
      s.same_as = single();
    } else {
      throw SchemaConfigError("schema line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
    }
  }
  s.validate();
  return s;
}

SchemaConfig SchemaConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

SchemaConfig SchemaConfig::resolve(std::string_view name_or_path) {
  if (name_or_path == "eventkg") return eventkg();
  if (name_or_path == "dbpedia") return dbpedia();
  return load(std::filesystem::path(std::string(name_or_path)));
}

}  // namespace eventqa
