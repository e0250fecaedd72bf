#include "eventqa/annotation.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

namespace eventqa {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::verbalization: return "verbalization";
    case AnnotationKind::flag_not_understood: return "flag_not_understood";
    case AnnotationKind::flag_unnatural: return "flag_unnatural";
  }
  return "?";
}

std::optional<AnnotationKind> parse_annotation_kind(std::string_view text) {
  if (text == "verbalization") return AnnotationKind::verbalization;
  if (text == "flag_not_understood" || text == "not_understood") return AnnotationKind::flag_not_understood;
  if (text == "flag_unnatural" || text == "unnatural") return AnnotationKind::flag_unnatural;
  return std::nullopt;
}

namespace instructions {
const std::vector<std::string> annotation = {
    "Read the SPARQL query and think of the question it represents.",
    "If you do not understand the query, select the \"I do not understand the query\" option. Leave a comment "
    "on what makes it difficult to understand the query. Click \"continue\". The next query will be shown.",
    "Do you think that a human user would ask the question represented by this query?",
    "If you think that is a question a user would not ask, please select the option \"A user would not ask "
    "this question\". Leave a comment to explain why. Click \"continue\". The next query will be shown.",
};
const std::vector<std::string> verbalization = {
    "Formulate the question in a way that sounds natural.",
    "If possible, vary the language expressions you use for different queries.",
};
}  // namespace instructions

std::string record_to_json(const AnnotationRecord& r) {
  ordered_json j;
  j["query_id"] = r.query_id;
  j["annotator"] = r.annotator;
  if (!r.language.empty()) j["language"] = r.language;
  j["kind"] = std::string(to_string(r.kind));
  j["text"] = r.text;
  j["timestamp"] = r.timestamp;
  return j.dump();
}

AnnotationRecord record_from_json(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed annotation record: ") + e.what());
  }
  auto field = [&](const char* key, bool required) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      if (required) throw DataError(std::string("annotation record lacks \"") + key + "\"");
      return {};
    }
    return it->get<std::string>();
  };
  if (!j.is_object()) throw DataError("annotation record is not an object");
  AnnotationRecord r;
  r.query_id = field("query_id", true);
  r.annotator = field("annotator", true);
  r.language = field("language", false);
  auto kind = parse_annotation_kind(field("kind", true));
  if (!kind) throw DataError("annotation record has an unknown kind");
  r.kind = *kind;
  r.text = field("text", true);
  r.timestamp = field("timestamp", true);
  return r;
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
  const auto days = std::chrono::floor<std::chrono::days>(now);
  const std::chrono::year_month_day ymd{days};
  const std::chrono::hh_mm_ss hms{now - days};
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()), static_cast<long long>(hms.seconds().count()));
  std::string out = buffer;
  char millis[8];
  std::snprintf(millis, sizeof millis, ".%03lld", static_cast<long long>(hms.subseconds().count()));
  out.insert(out.size() - 1, millis);
  return out;
}

bool trim_torn_tail(const std::filesystem::path& path) {
  std::string content = read_file(path);
  if (content.empty() || content.back() == '\n') return false;
  const auto keep = content.rfind('\n');
  std::filesystem::resize_file(path, keep == std::string::npos ? 0 : keep + 1);
  return true;
}

}  // namespace

AnnotationStore::AnnotationStore(Dataset dataset, std::filesystem::path log, Clock clock)
    : dataset_(std::move(dataset)), log_(std::move(log)), clock_(clock ? std::move(clock) : Clock(utc_now)) {
  for (std::size_t i = 0; i < dataset_.entries.size(); ++i) {
    if (!index_.emplace(dataset_.entries[i].id, i).second) {
      throw DataError("duplicate query id in dataset: " + dataset_.entries[i].id);
    }
  }
  states_.resize(dataset_.entries.size());
  if (!std::filesystem::exists(log_)) {
    std::ofstream create(log_, std::ios::binary);
    if (!create) throw IoError("cannot create " + log_.string());
    return;
  }
  trim_torn_tail(log_);
  std::ifstream in(log_, std::ios::binary);
  if (!in) throw IoError("cannot open " + log_.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    AnnotationRecord r;
    try {
      r = record_from_json(line);
      validate(r);
    } catch (const Error& e) {
      throw DataError(log_.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
    apply(r);
    log_records_.push_back(std::move(r));
  }
}

void AnnotationStore::validate(const AnnotationRecord& r) const {
  if (!index_.contains(r.query_id)) throw UnknownQuery(r.query_id);
  if (r.annotator.empty()) throw InvalidRecord("annotator is required");
  if (r.kind == AnnotationKind::verbalization) {
    if (r.language.empty()) throw InvalidRecord("a verbalization needs a language");
    if (r.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw InvalidRecord("a verbalization needs non-empty text");
    }
  } else {
    if (!r.language.empty()) throw InvalidRecord("flags carry no language");
    if (r.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw InvalidRecord("a flag needs a comment");
    }
  }
}

bool AnnotationStore::apply(const AnnotationRecord& r) {
  auto& state = states_[index_.find(r.query_id)->second];
  const Key key{r.annotator, r.language, r.kind};
  auto it = state.current.find(key);
  if (it == state.current.end()) {
    state.current.emplace(key, r);
    return true;
  }
  if (it->second == r) return false;
  if (r.timestamp >= it->second.timestamp) it->second = r;
  return true;
}

QueryStatus AnnotationStore::status_of(std::size_t index) const {
  QueryStatus s;
  std::map<std::string, const AnnotationRecord*> latest;
  for (const auto& [key, r] : states_[index].current) {
    if (r.kind != AnnotationKind::verbalization) {
      s.flagged = true;
      continue;
    }
    auto& slot = latest[r.language];
    if (slot == nullptr || r.timestamp > slot->timestamp) slot = &r;
  }
  for (const auto& [lang, r] : latest) s.verbalized[lang] = r->text;
  return s;
}

std::optional<QueryView> AnnotationStore::next_query(std::string_view, std::string_view language) const {
  std::shared_lock lock(mutex_);
  for (std::size_t i = 0; i < dataset_.entries.size(); ++i) {
    auto s = status_of(i);
    if (s.flagged || s.verbalized.contains(std::string(language))) continue;
    return QueryView{&dataset_.entries[i], std::move(s)};
  }
  return std::nullopt;
}

std::optional<QueryView> AnnotationStore::view(std::string_view id) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return QueryView{&dataset_.entries[it->second], status_of(it->second)};
}

void AnnotationStore::append(const AnnotationRecord& r) {
  const std::string line = record_to_json(r) + "\n";
  const int fd = ::open(log_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot open " + log_.string());
  std::size_t done = 0;
  while (done < line.size()) {
    const auto n = ::write(fd, line.data() + done, line.size() - done);
    if (n < 0) {
      ::close(fd);
      throw IoError("cannot append to " + log_.string());
    }
    done += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

QueryStatus AnnotationStore::submit(AnnotationRecord record) {
  std::unique_lock lock(mutex_);
  if (record.timestamp.empty()) {
    // An identical current record makes the call a no-op, whatever the clock says.
    validate(record);
    auto& state = states_[index_.find(record.query_id)->second];
    auto it = state.current.find(Key{record.annotator, record.language, record.kind});
    if (it != state.current.end() && it->second.text == record.text) {
      return status_of(index_.find(record.query_id)->second);
    }
    record.timestamp = clock_();
  }
  validate(record);
  const auto index = index_.find(record.query_id)->second;
  auto& state = states_[index];
  const Key key{record.annotator, record.language, record.kind};
  if (auto it = state.current.find(key); it != state.current.end() && it->second == record) return status_of(index);
  append(record);
  apply(record);
  log_records_.push_back(record);
  return status_of(index);
}

Progress AnnotationStore::progress() const {
  std::shared_lock lock(mutex_);
  Progress p;
  p.total = dataset_.entries.size();
  for (const auto& lang : languages_) p.per_language[lang] = 0;
  for (std::size_t i = 0; i < dataset_.entries.size(); ++i) {
    const auto s = status_of(i);
    for (const auto& [lang, text] : s.verbalized) ++p.per_language[lang];
    if (s.flagged) {
      ++p.flagged;
    } else if (s.verbalized.empty()) {
      ++p.pending;
    } else if (std::all_of(languages_.begin(), languages_.end(),
                           [&](const std::string& l) { return s.verbalized.contains(l); })) {
      ++p.fully_verbalized;
    } else {
      ++p.partially_verbalized;
    }
  }
  return p;
}

Dataset AnnotationStore::export_merged() const {
  std::shared_lock lock(mutex_);
  Dataset out;
  out.id = dataset_.id;
  for (std::size_t i = 0; i < dataset_.entries.size(); ++i) {
    const auto s = status_of(i);
    if (s.flagged || s.verbalized.empty()) continue;
    auto entry = dataset_.entries[i];
    for (const auto& [lang, text] : s.verbalized) entry.verbalizations[lang] = text;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

std::string AnnotationStore::export_report() const {
  std::shared_lock lock(mutex_);
  ordered_json flagged = ordered_json::array();
  ordered_json pending = ordered_json::array();
  for (std::size_t i = 0; i < dataset_.entries.size(); ++i) {
    const auto s = status_of(i);
    if (s.flagged) {
      ordered_json flags = ordered_json::array();
      for (const auto& [key, r] : states_[i].current) {
        if (r.kind == AnnotationKind::verbalization) continue;
        flags.push_back(ordered_json{{"annotator", r.annotator},
                                     {"kind", std::string(to_string(r.kind))},
                                     {"comment", r.text},
                                     {"timestamp", r.timestamp}});
      }
      flagged.push_back(ordered_json{{"id", dataset_.entries[i].id}, {"flags", std::move(flags)}});
    } else if (s.verbalized.empty()) {
      pending.push_back(dataset_.entries[i].id);
    }
  }
  ordered_json report;
  report["dataset"] = dataset_.id;
  report["flagged"] = std::move(flagged);
  report["pending"] = std::move(pending);
  return report.dump(2) + "\n";
}

std::vector<AnnotationRecord> AnnotationStore::records() const {
  std::shared_lock lock(mutex_);
  return log_records_;
}

// ---------------------------------------------------------------- HTTP

struct AnnotationService::Impl {
  AnnotationStore& store;
  ServiceOptions options;
  httplib::Server server;

  Impl(AnnotationStore& s, ServiceOptions o) : store(s), options(std::move(o)) { routes(); }

  static void json_reply(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json; charset=utf-8");
  }
  static void error_reply(httplib::Response& res, int status, const std::string& message) {
    json_reply(res, status, ordered_json{{"error", message}});
  }

  static ordered_json status_json(const QueryStatus& s) {
    ordered_json verbalized = ordered_json::object();
    for (const auto& [lang, text] : s.verbalized) verbalized[lang] = text;
    std::string state = s.flagged ? "flagged" : s.verbalized.empty() ? "pending" : "verbalized";
    return ordered_json{{"state", state}, {"flagged", s.flagged}, {"verbalizations", std::move(verbalized)}};
  }

  static ordered_json view_json(const QueryView& v) {
    ordered_json j;
    j["id"] = v.entry->id;
    j["sparql"] = v.entry->sparql.text;
    j["model"] = std::string(to_string(v.entry->sparql.model));
    if (v.entry->sparql_dbpedia) j["sparql_dbpedia"] = v.entry->sparql_dbpedia->text;
    j["instructions"] = ordered_json{{"annotation", instructions::annotation},
                                     {"verbalization", instructions::verbalization}};
    j["options"] = ordered_json::array(
        {ordered_json{{"kind", "not_understood"}, {"label", std::string(instructions::not_understood_option)}},
         ordered_json{{"kind", "unnatural"}, {"label", std::string(instructions::unnatural_option)}}});
    j["status"] = status_json(v.status);
    return j;
  }

  static std::string annotator_of(const httplib::Request& req, const ordered_json* body) {
    if (body != nullptr && body->contains("annotator") && (*body)["annotator"].is_string()) {
      return (*body)["annotator"].get<std::string>();
    }
    if (req.has_param("annotator")) return req.get_param_value("annotator");
    return req.get_header_value("X-Annotator");
  }

  void submit(const httplib::Request& req, httplib::Response& res, bool flag) {
    ordered_json body;
    try {
      body = ordered_json::parse(req.body);
    } catch (const nlohmann::json::parse_error&) {
      return error_reply(res, 400, "request body is not JSON");
    }
    if (!body.is_object()) return error_reply(res, 400, "request body must be an object");
    auto text_field = [&](const char* key) {
      auto it = body.find(key);
      return it != body.end() && it->is_string() ? it->get<std::string>() : std::string();
    };
    AnnotationRecord r;
    r.query_id = req.path_params.at("id");
    r.annotator = annotator_of(req, &body);
    if (flag) {
      auto kind = parse_annotation_kind(text_field("kind"));
      if (!kind || *kind == AnnotationKind::verbalization) {
        return error_reply(res, 400, "kind must be not_understood or unnatural");
      }
      r.kind = *kind;
      r.text = text_field("comment");
    } else {
      r.kind = AnnotationKind::verbalization;
      r.language = text_field("lang");
      if (r.language.empty()) r.language = text_field("language");
      r.text = text_field("text");
    }
    try {
      const auto status = store.submit(std::move(r));
      json_reply(res, 200, ordered_json{{"id", req.path_params.at("id")}, {"status", status_json(status)}});
    } catch (const UnknownQuery& e) {
      error_reply(res, 404, e.what());
    } catch (const InvalidRecord& e) {
      error_reply(res, 400, e.what());
    }
  }

  void routes() {
    server.Get("/api/queries/next", [this](const httplib::Request& req, httplib::Response& res) {
      const auto lang = req.get_param_value("lang");
      if (lang.empty()) return error_reply(res, 400, "lang is required");
      auto v = store.next_query(annotator_of(req, nullptr), lang);
      if (!v) return json_reply(res, 200, ordered_json{{"done", true}});
      json_reply(res, 200, view_json(*v));
    });
    server.Get("/api/queries/:id", [this](const httplib::Request& req, httplib::Response& res) {
      auto v = store.view(req.path_params.at("id"));
      if (!v) return error_reply(res, 404, "unknown query: " + req.path_params.at("id"));
      json_reply(res, 200, view_json(*v));
    });
    server.Post("/api/queries/:id/verbalization",
                [this](const httplib::Request& req, httplib::Response& res) { submit(req, res, false); });
    server.Post("/api/queries/:id/flag",
                [this](const httplib::Request& req, httplib::Response& res) { submit(req, res, true); });
    server.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      const auto p = store.progress();
      ordered_json per_language = ordered_json::object();
      for (const auto& [lang, n] : p.per_language) per_language[lang] = n;
      json_reply(res, 200,
                 ordered_json{{"total", p.total},
                              {"pending", p.pending},
                              {"flagged", p.flagged},
                              {"fully_verbalized", p.fully_verbalized},
                              {"partially_verbalized", p.partially_verbalized},
                              {"per_language", std::move(per_language)}});
    });
    server.Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(to_qald_json(store.export_merged()), "application/json; charset=utf-8");
    });
    server.Get("/api/export/report", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(store.export_report(), "application/json; charset=utf-8");
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        error_reply(res, 500, e.what());
      } catch (...) {
        error_reply(res, 500, "internal error");
      }
    });
    if (!options.static_dir.empty()) server.set_mount_point("/", options.static_dir.string());
  }
};

AnnotationService::AnnotationService(AnnotationStore& store, ServiceOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

AnnotationService::~AnnotationService() = default;

bool AnnotationService::listen() { return impl_->server.listen(impl_->options.host, impl_->options.port); }

int AnnotationService::bind() {
  if (impl_->options.port == 0) return impl_->server.bind_to_any_port(impl_->options.host);
  return impl_->server.bind_to_port(impl_->options.host, impl_->options.port) ? impl_->options.port : -1;
}

bool AnnotationService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void AnnotationService::stop() { impl_->server.stop(); }

}  // namespace eventqa
