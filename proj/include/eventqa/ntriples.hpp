#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eventqa/error.hpp"
#include "eventqa/term.hpp"

namespace eventqa {

class MalformedLine : public DataError {
 public:
  MalformedLine(std::size_t line_no, std::string reason);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

enum class ParseMode { strict, lenient };

/// Parses one N-Triples statement. Blank and comment-only lines yield nullopt.
/// Throws MalformedLine.
std::optional<Triple> parse_ntriples_line(std::string_view line, std::size_t line_no);

/// Streaming reader: memory use is bounded by the longest line.
/// In lenient mode malformed lines are skipped and collected in diagnostics().
class NTriplesReader {
 public:
  explicit NTriplesReader(std::istream& in, ParseMode mode = ParseMode::strict)
      : in_(in), mode_(mode) {}

  std::optional<Triple> next();
  [[nodiscard]] const std::vector<MalformedLine>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::istream& in_;
  ParseMode mode_;
  std::size_t line_no_ = 0;
  std::string buffer_;
  std::vector<MalformedLine> diagnostics_;
};

std::vector<Triple> parse_ntriples(std::istream& in, ParseMode mode = ParseMode::strict);
std::vector<Triple> parse_ntriples(std::string_view text, ParseMode mode = ParseMode::strict);

/// Streams a plain or gzip-compressed .nt file. Returns the number of triples visited.
std::size_t for_each_triple(const std::filesystem::path& path, ParseMode mode,
                            const std::function<void(Triple&&)>& visit,
                            std::vector<MalformedLine>* diagnostics = nullptr);

std::vector<Triple> read_ntriples_file(const std::filesystem::path& path,
                                       ParseMode mode = ParseMode::strict);

std::string to_ntriples(const Term& term);
/// One statement, terminated by " ." (no newline).
std::string to_ntriples(const Triple& triple);

}  // namespace eventqa
