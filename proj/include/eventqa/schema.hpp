#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eventqa/error.hpp"

namespace eventqa {

class SchemaConfigError : public DataError {
 public:
  using DataError::DataError;
};

/// Vocabulary that tells build_graph how to read a dump.
struct SchemaConfig {
  /// (predicate, value) pairs; a subject carrying any of them is an event.
  std::vector<std::pair<std::string, std::string>> event_types;
  std::string reify_subject;
  std::string reify_object;
  std::string reify_role;
  std::vector<std::string> time_begin;
  std::vector<std::string> time_end;
  std::vector<std::string> labels;
  std::string same_as;

  [[nodiscard]] bool reified() const noexcept { return !reify_subject.empty(); }
  [[nodiscard]] bool is_event_type_predicate(std::string_view predicate) const;
  [[nodiscard]] bool is_temporal_predicate(std::string_view predicate) const;
  [[nodiscard]] bool is_begin_predicate(std::string_view predicate) const;
  [[nodiscard]] bool is_end_predicate(std::string_view predicate) const;
  [[nodiscard]] bool is_label_predicate(std::string_view predicate) const;

  /// Throws SchemaConfigError when a group required for the model is missing.
  void validate() const;

  /// EventKG: sem:Event typing, rdf:subject/rdf:object/sem:roleType reification,
  /// sem:hasBeginTimeStamp/sem:hasEndTimeStamp.
  static SchemaConfig eventkg();
  /// DBpedia: dbo:Event typing, direct triples, dbp:year/dbo:date/dbo:startDate begin times.
  static SchemaConfig dbpedia();

  /// Flat `key = value` text (TOML-compatible strings). Multi-valued keys take
  /// comma-separated values; `event_type` values are "predicate value" pairs.
  /// Prefixed names from the standard prefix table are expanded.
  static SchemaConfig parse(std::string_view text);
  static SchemaConfig load(const std::filesystem::path& path);
  /// "eventkg", "dbpedia", or a path to a schema file.
  static SchemaConfig resolve(std::string_view name_or_path);

  bool operator==(const SchemaConfig&) const = default;
};

}  // namespace eventqa
