#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/qald.hpp"

namespace eventqa {

class UnknownQuery : public Error {
 public:
  explicit UnknownQuery(const std::string& id) : Error("unknown query: " + id) {}
};

class InvalidRecord : public Error {
 public:
  using Error::Error;
};

enum class AnnotationKind : std::uint8_t { verbalization, flag_not_understood, flag_unnatural };

std::string_view to_string(AnnotationKind kind);
std::optional<AnnotationKind> parse_annotation_kind(std::string_view text);

struct AnnotationRecord {
  std::string query_id;
  std::string annotator;
  std::string language;  // verbalizations only
  AnnotationKind kind = AnnotationKind::verbalization;
  std::string text;       // verbalization, or the flag comment
  std::string timestamp;  // UTC, ISO 8601

  bool operator==(const AnnotationRecord&) const = default;
};

/// Option labels and instructions shown with every query.
namespace instructions {
inline constexpr std::string_view not_understood_option = "I do not understand the query";
inline constexpr std::string_view unnatural_option = "A user would not ask this question";
extern const std::vector<std::string> annotation;
extern const std::vector<std::string> verbalization;
}  // namespace instructions

struct QueryStatus {
  bool flagged = false;
  /// Language -> current verbalization.
  std::map<std::string, std::string> verbalized;
};

struct Progress {
  std::size_t total = 0;
  std::size_t pending = 0;
  std::size_t flagged = 0;
  std::size_t fully_verbalized = 0;
  std::size_t partially_verbalized = 0;
  std::map<std::string, std::size_t> per_language;

  bool operator==(const Progress&) const = default;
};

struct QueryView {
  const DatasetEntry* entry = nullptr;
  QueryStatus status;
};

/// Append-only NDJSON log over a fixed dataset. Status is a fold of the log, so
/// reopening the same log restores the same state. Readers share a lock; submissions
/// are serialized.
class AnnotationStore {
 public:
  using Clock = std::function<std::string()>;

  /// Replays `log` (created when missing). A torn final line is dropped.
  /// Throws IoError, DataError.
  AnnotationStore(Dataset dataset, std::filesystem::path log, Clock clock = {});

  /// Dataset order first; none when every query is flagged or verbalized in `language`.
  std::optional<QueryView> next_query(std::string_view annotator, std::string_view language) const;
  std::optional<QueryView> view(std::string_view id) const;

  /// Fills a missing timestamp from the clock. Identical resubmissions are not logged
  /// again. Throws UnknownQuery, InvalidRecord, IoError.
  QueryStatus submit(AnnotationRecord record);

  Progress progress() const;
  /// Non-flagged queries with at least one verbalization, verbalizations merged.
  Dataset export_merged() const;
  /// JSON listing flagged (with comments) and pending ids.
  std::string export_report() const;

  [[nodiscard]] const std::vector<std::string>& languages() const noexcept { return languages_; }
  [[nodiscard]] std::vector<AnnotationRecord> records() const;

 private:
  struct Key {
    std::string annotator;
    std::string language;
    AnnotationKind kind;
    auto operator<=>(const Key&) const = default;
  };
  struct State {
    std::map<Key, AnnotationRecord> current;
  };

  void validate(const AnnotationRecord& r) const;
  bool apply(const AnnotationRecord& r);  // false when the record changes nothing
  QueryStatus status_of(std::size_t index) const;
  void append(const AnnotationRecord& r);

  Dataset dataset_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::filesystem::path log_;
  Clock clock_;
  std::vector<std::string> languages_{"en", "pt", "de"};
  mutable std::shared_mutex mutex_;
  std::vector<State> states_;
  std::vector<AnnotationRecord> log_records_;
};

std::string record_to_json(const AnnotationRecord& r);
/// Throws DataError.
AnnotationRecord record_from_json(std::string_view line);

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path static_dir;
};

/// HTTP front of a store. `listen` blocks until `stop`.
class AnnotationService {
 public:
  AnnotationService(AnnotationStore& store, ServiceOptions options);
  ~AnnotationService();
  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  /// Binds and serves; returns false when binding fails.
  bool listen();
  /// Binds to an ephemeral port when options.port is 0. Returns the bound port or -1.
  int bind();
  /// Serves on a port obtained from bind().
  bool listen_after_bind();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace eventqa
