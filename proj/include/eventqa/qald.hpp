#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/evaluator.hpp"
#include "eventqa/metrics.hpp"
#include "eventqa/sparql.hpp"

namespace eventqa {

class SchemaError : public DataError {
 public:
  SchemaError(std::string path, std::string reason);
  [[nodiscard]] const std::string& path() const noexcept { return path_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

struct DatasetEntry {
  std::string id;
  SparqlText sparql;
  std::optional<SparqlText> sparql_dbpedia;
  /// Language tag -> text; every present text is non-empty.
  std::map<std::string, std::string> verbalizations;
  std::optional<AnswerSet> answers;
  std::string seed_trace_digest;
  std::string generated_at;
  std::string kg_digest;

  bool operator==(const DatasetEntry&) const = default;
};

struct Dataset {
  std::string id;
  std::vector<DatasetEntry> entries;

  bool operator==(const Dataset&) const = default;
};

/// 2-space indented UTF-8 JSON with a fixed key order and a trailing newline.
std::string to_qald_json(const Dataset& dataset);
/// Throws IoError.
void write_qald(const Dataset& dataset, const std::filesystem::path& destination);

/// `source` names the document in SchemaError messages. Throws SchemaError.
Dataset parse_qald_json(std::string_view text, const std::string& source = "<memory>");
/// Throws IoError, SchemaError.
Dataset read_qald(const std::filesystem::path& source);

/// A lazily parsed SPARQL string: the query, or the reason it could not be read.
struct ParsedQuery {
  std::optional<SemanticQuery> query;
  std::string error;
};
ParsedQuery parse_entry(const SparqlText& text);

struct VoidSummary {
  std::string dataset_iri = "urn:eventqa:dataset";
  std::string title = "Event-QA";
  std::string license = "https://creativecommons.org/licenses/by/4.0/";
  std::size_t questions = 0;
  std::size_t source_triples = 0;
  std::string kg_digest;
  DatasetStats stats;
};

/// Turtle VoID description; byte-identical for equal inputs.
std::string emit_void(const VoidSummary& summary);

struct IriLists {
  std::vector<std::string> predicates;
  std::vector<std::string> events;
  std::vector<std::string> entities;
};

/// Sorted, unique IRIs per category.
IriLists export_lists(const DatasetStats& stats);
/// Writes predicates.txt, events.txt and entities.txt, one IRI per line. Throws IoError.
void write_lists(const IriLists& lists, const std::filesystem::path& directory);

/// Writes text to a file via a temporary sibling and rename. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Throws IoError.
std::string read_file(const std::filesystem::path& path);

}  // namespace eventqa
