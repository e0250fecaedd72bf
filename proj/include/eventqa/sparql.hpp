#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "eventqa/error.hpp"
#include "eventqa/query.hpp"

namespace eventqa {

class UnsupportedConstruct : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected);
  [[nodiscard]] std::size_t position() const noexcept { return position_; }
  [[nodiscard]] const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// A construct outside the dialect (OPTIONAL, UNION, property paths, ...).
class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(std::string name);
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

struct SparqlText {
  std::string text;
  GraphModel model = GraphModel::direct;
  bool operator==(const SparqlText&) const = default;
};

struct EmitOptions {
  /// PREFIX lines for the namespaces the body uses.
  bool prefix_declarations = true;
};

/// Deterministic text; equal queries give byte-identical output.
SparqlText emit(const SemanticQuery& q, const EmitOptions& options = {});

/// Parses the emitted dialect. Prefixes of the standard table need not be declared.
/// Throws ParseError, UnsupportedFeature, InvalidQuery.
SemanticQuery parse(std::string_view text, GraphModel model);

}  // namespace eventqa
