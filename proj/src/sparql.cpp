#include "eventqa/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "eventqa/vocabulary.hpp"

namespace eventqa {

ParseError::ParseError(std::size_t position, std::string expected)
    : Error("SPARQL parse error at offset " + std::to_string(position) + ": expected " + expected),
      position_(position),
      expected_(std::move(expected)) {}

UnsupportedFeature::UnsupportedFeature(std::string name)
    : Error("unsupported SPARQL feature: " + name), name_(std::move(name)) {}

namespace {

// ---------------------------------------------------------------- emission

std::string escape_lexical(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

class Emitter {
 public:
  explicit Emitter(const SemanticQuery& q) : q_(q) {
    for (const auto& v : q.graph.variables) taken_.insert(v.name);
    if (q.constraint) taken_.insert(q.constraint->variable);
  }

  std::string run(const EmitOptions& options) {
    const auto& rels = q_.graph.relations;
    std::vector<std::vector<std::string>> blocks;

    std::vector<std::string> typing;
    for (const auto& v : q_.graph.variables) {
      if (!v.type.empty()) typing.push_back("?" + v.name + " " + iri(vocab::rdf_type) + " " + iri(v.type) + " .");
    }
    blocks.push_back(std::move(typing));

    std::vector<std::string> statement_var(rels.size());
    std::vector<std::string> direct;
    std::size_t statements = 0;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const auto& r = rels[i];
      if (r.provenance == Provenance::reified) {
        statement_var[i] = fresh("relation", statements);
        const auto& s = statement_var[i];
        std::vector<std::string> block;
        block.push_back(s + " " + iri(vocab::rdf_object) + " " + term(r.object) + " .");
        block.push_back(s + " " + iri(vocab::rdf_subject) + " " + term(r.subject) + " .");
        if (!r.predicate.empty()) block.push_back(s + " " + iri(vocab::sem_role_type) + " " + iri(r.predicate) + " .");
        blocks.push_back(std::move(block));
      } else {
        if (r.predicate.empty()) throw UnsupportedConstruct("direct relation without a predicate");
        direct.push_back(term(r.subject) + " " + iri(r.predicate) + " " + term(r.object) + " .");
      }
    }
    blocks.push_back(std::move(direct));

    std::vector<std::string> temporal;
    if (q_.constraint) {
      const auto& c = *q_.constraint;
      const std::string anchor = c.relation ? statement_var.at(*c.relation) : term(c.term);
      const std::string v = "?" + c.variable;
      temporal.push_back(anchor + " " + iri(c.predicate) + " " + v + " .");
      switch (c.mode) {
        case TemporalMode::within:
          temporal.push_back("FILTER ( " + v + " >= " + literal(*c.lower) + " && " + v + " <= " + literal(*c.upper) + " )");
          break;
        case TemporalMode::after: temporal.push_back("FILTER ( " + v + " > " + literal(*c.lower) + " )"); break;
        case TemporalMode::before: temporal.push_back("FILTER ( " + v + " < " + literal(*c.upper) + " )"); break;
      }
    }
    std::vector<std::string> bridge_block;
    for (const auto& [alias, var] : bridges_) {
      bridge_block.push_back(var + " " + iri(vocab::owl_same_as) + " " + iri(alias) + " .");
    }
    blocks.push_back(std::move(bridge_block));
    blocks.push_back(std::move(temporal));

    std::string body;
    bool first = true;
    for (const auto& block : blocks) {
      if (block.empty()) continue;
      if (!first) body += "\n";
      first = false;
      for (const auto& line : block) body += "  " + line + "\n";
    }

    std::string head;
    const std::string var = q_.graph.variables.empty() ? "" : "?" + q_.graph.variables.front().name;
    switch (q_.type) {
      case QueryType::ask: head = "ASK WHERE {\n"; break;
      case QueryType::select: head = "SELECT DISTINCT " + var + " WHERE {\n"; break;
      case QueryType::count:
        head = "SELECT (COUNT(DISTINCT(" + var + ")) AS " + (var == "?count" ? "?total" : "?count") +
               ") WHERE {\n";
        break;
    }

    std::string out;
    if (options.prefix_declarations) {
      for (const auto& [prefix, ns] : PrefixTable::standard().entries()) {
        if (used_.contains(prefix)) out += "PREFIX " + prefix + ": <" + ns + ">\n";
      }
    }
    return out + head + body + "}\n";
  }

 private:
  std::string fresh(std::string_view stem, std::size_t& counter) {
    while (true) {
      auto name = std::string(stem) + std::to_string(++counter);
      if (taken_.insert(name).second) return "?" + name;
    }
  }

  std::string iri(const std::string& full) {
    if (auto abbreviated = PrefixTable::standard().abbreviate(full)) {
      used_.insert(abbreviated->substr(0, abbreviated->find(':')));
      return *abbreviated;
    }
    return "<" + full + ">";
  }

  std::string literal(const Literal& lit) {
    if (!lit.language.empty() && !lit.datatype.empty()) {
      throw UnsupportedConstruct("literal with both a language tag and a datatype");
    }
    std::string out = "\"" + escape_lexical(lit.lexical) + "\"";
    if (!lit.language.empty()) out += "@" + lit.language;
    if (!lit.datatype.empty()) out += "^^" + iri(lit.datatype);
    return out;
  }

  std::string term(const QueryTerm& t) {
    switch (t.kind) {
      case QueryTerm::Kind::variable: return "?" + t.value;
      case QueryTerm::Kind::literal: return literal(t.as_literal());
      case QueryTerm::Kind::node:
        if (!t.via_same_as) return iri(t.value);
        for (const auto& [alias, var] : bridges_) {
          if (alias == t.value) return var;
        }
        bridges_.emplace_back(t.value, fresh("entity", entities_));
        return bridges_.back().second;
    }
    return {};
  }

  const SemanticQuery& q_;
  std::set<std::string> taken_;
  std::set<std::string> used_;
  std::vector<std::pair<std::string, std::string>> bridges_;  // (alias IRI, ?var), first use order
  std::size_t entities_ = 0;
};

// ---------------------------------------------------------------- lexing

enum class Tok { iri, pname, var, string, number, word, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;  // IRI body, pname, var name, lexical form, word, punctuation
  std::string language;
  std::string datatype_raw;  // '<iri>' body or pname after ^^
  bool datatype_is_pname = false;
  std::size_t pos = 0;
};

bool is_name_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.pos = i_;
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[i_];
      if (c == '<' && try_iri(t)) {
      } else if (c == '?' || c == '$') {
        ++i_;
        const auto start = i_;
        while (i_ < s_.size() && is_name_byte(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) throw ParseError(t.pos, "variable name");
        t.kind = Tok::var;
        t.text = std::string(s_.substr(start, i_ - start));
      } else if (c == '"' || c == '\'') {
        lex_string(t);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 ((c == '-' || c == '+') && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
        const auto start = i_++;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ + 1 < s_.size() && s_[i_] == '.' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
          ++i_;
          while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        }
        t.kind = Tok::number;
        t.text = std::string(s_.substr(start, i_ - start));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == ':' || c == '_') {
        lex_name(t);
      } else {
        lex_punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void skip_space() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  bool try_iri(Token& t) {
    std::size_t j = i_ + 1;
    while (j < s_.size()) {
      const auto c = static_cast<unsigned char>(s_[j]);
      if (c == '>') break;
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`' ||
          c == '\\') {
        return false;
      }
      ++j;
    }
    if (j >= s_.size()) return false;
    t.kind = Tok::iri;
    t.text = std::string(s_.substr(i_ + 1, j - i_ - 1));
    i_ = j + 1;
    return true;
  }

  void lex_string(Token& t) {
    const char quote = s_[i_];
    if (s_.substr(i_, 3) == std::string(3, quote)) throw UnsupportedFeature("long string literal");
    ++i_;
    std::string lexical;
    while (true) {
      if (i_ >= s_.size() || s_[i_] == '\n') throw ParseError(t.pos, "closing quote");
      const char c = s_[i_++];
      if (c == quote) break;
      if (c != '\\') {
        lexical += c;
        continue;
      }
      if (i_ >= s_.size()) throw ParseError(i_, "escape character");
      const char e = s_[i_++];
      switch (e) {
        case 't': lexical += '\t'; break;
        case 'n': lexical += '\n'; break;
        case 'r': lexical += '\r'; break;
        case 'b': lexical += '\b'; break;
        case 'f': lexical += '\f'; break;
        case '"': lexical += '"'; break;
        case '\'': lexical += '\''; break;
        case '\\': lexical += '\\'; break;
        default: throw ParseError(i_ - 1, "valid string escape");
      }
    }
    t.kind = Tok::string;
    t.text = std::move(lexical);
    if (i_ < s_.size() && s_[i_] == '@') {
      const auto start = ++i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) ++i_;
      if (start == i_) throw ParseError(start, "language tag");
      t.language = std::string(s_.substr(start, i_ - start));
    } else if (s_.substr(i_, 2) == "^^") {
      i_ += 2;
      Token dt;
      dt.pos = i_;
      if (i_ < s_.size() && s_[i_] == '<' && try_iri(dt)) {
        t.datatype_raw = dt.text;
      } else {
        lex_name(dt);
        if (dt.kind != Tok::pname) throw ParseError(dt.pos, "datatype IRI");
        t.datatype_raw = dt.text;
        t.datatype_is_pname = true;
      }
    }
  }

  void lex_name(Token& t) {
    const auto start = i_;
    if (s_.substr(i_, 2) == "_:") throw UnsupportedFeature("blank node");
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '-')) ++i_;
    if (i_ < s_.size() && s_[i_] == ':') {
      ++i_;
      std::string text(s_.substr(start, i_ - start));
      while (i_ < s_.size()) {
        const auto c = static_cast<unsigned char>(s_[i_]);
        if (c == '\\' && i_ + 1 < s_.size()) {
          text += s_[i_ + 1];
          i_ += 2;
        } else if (is_name_byte(c) || c == '-' || c == '.' || c == ':' || c == '%') {
          text += static_cast<char>(c);
          ++i_;
        } else {
          break;
        }
      }
      while (text.back() == '.') {
        text.pop_back();
        --i_;
      }
      t.kind = Tok::pname;
      t.text = std::move(text);
      return;
    }
    if (start == i_) throw ParseError(start, "name");
    t.kind = Tok::word;
    t.text = std::string(s_.substr(start, i_ - start));
  }

  void lex_punct(Token& t) {
    static constexpr std::string_view two[] = {"&&", "||", "<=", ">=", "!=", "^^"};
    for (auto op : two) {
      if (s_.substr(i_, 2) == op) {
        t.kind = Tok::punct;
        t.text = std::string(op);
        i_ += 2;
        return;
      }
    }
    static constexpr std::string_view one = "{}().;,*/|^+!=<>[]";
    if (one.find(s_[i_]) == std::string_view::npos) throw ParseError(i_, "SPARQL token");
    t.kind = Tok::punct;
    t.text = std::string(1, s_[i_++]);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------- parsing

struct PTerm {
  enum class Kind { var, iri, literal } kind = Kind::iri;
  std::string value;  // var name or IRI
  Literal lit;
  std::size_t pos = 0;

  [[nodiscard]] bool is_var() const { return kind == Kind::var; }
  [[nodiscard]] bool is_var(std::string_view name) const { return kind == Kind::var && value == name; }
  [[nodiscard]] bool is_iri(std::string_view v) const { return kind == Kind::iri && value == v; }
};

struct PTriple {
  PTerm s;
  PTerm p;
  PTerm o;
};

struct PFilter {
  std::string variable;
  TemporalMode mode = TemporalMode::within;
  std::optional<Literal> lower;
  std::optional<Literal> upper;
  std::size_t pos = 0;
};

std::string upper_ascii(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

const std::set<std::string>& unsupported_keywords() {
  static const std::set<std::string> words = {"OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND",
                                              "VALUES", "ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING",
                                              "CONSTRUCT", "DESCRIBE", "FROM", "BASE", "EXISTS", "NOT"};
  return words;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  SemanticQuery run(GraphModel model) {
    while (keyword("PREFIX")) {
      ++k_;
      if (peek().kind != Tok::pname || peek().text.back() != ':') throw ParseError(peek().pos, "prefix name");
      auto prefix = peek().text.substr(0, peek().text.size() - 1);
      ++k_;
      if (peek().kind != Tok::iri) throw ParseError(peek().pos, "namespace IRI");
      declared_[prefix] = peek().text;
      ++k_;
    }
    check_unsupported();
    if (keyword("ASK")) {
      ++k_;
      type_ = QueryType::ask;
    } else if (keyword("SELECT")) {
      ++k_;
      projection();
    } else {
      throw ParseError(peek().pos, "ASK or SELECT");
    }
    check_unsupported();
    if (keyword("WHERE")) ++k_;
    group();
    check_unsupported();
    if (peek().kind != Tok::end) throw ParseError(peek().pos, "end of query");
    return lower(model);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(k_ + ahead, t_.size() - 1)]; }
  bool keyword(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::word && upper_ascii(peek(ahead).text) == w;
  }
  bool punct(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }
  void expect(std::string_view p) {
    if (!punct(p)) throw ParseError(peek().pos, "'" + std::string(p) + "'");
    ++k_;
  }
  void check_unsupported() const {
    if (peek().kind == Tok::word) {
      auto w = upper_ascii(peek().text);
      if (unsupported_keywords().contains(w)) throw UnsupportedFeature(w);
    }
  }
  std::string var_name() {
    if (peek().kind != Tok::var) throw ParseError(peek().pos, "variable");
    return t_[k_++].text;
  }

  void projection() {
    if (keyword("DISTINCT") || keyword("REDUCED")) ++k_;
    if (punct("*")) throw UnsupportedFeature("SELECT *");
    if (punct("(")) {
      ++k_;
      if (!keyword("COUNT")) throw UnsupportedFeature("projection expression");
      ++k_;
      expect("(");
      if (keyword("DISTINCT")) ++k_;
      if (punct("*")) throw UnsupportedFeature("COUNT(*)");
      const bool wrapped = punct("(");
      if (wrapped) ++k_;
      answer_ = var_name();
      if (wrapped) expect(")");
      if (punct(")")) {
        ++k_;
        if (!keyword("AS")) throw ParseError(peek().pos, "AS");
        ++k_;
        var_name();
        expect(")");
      } else if (keyword("AS")) {  // COUNT(DISTINCT(?v) AS ?c)) as printed in some sources
        ++k_;
        var_name();
        expect(")");
        expect(")");
      } else {
        throw ParseError(peek().pos, "')' or AS");
      }
      type_ = QueryType::count;
    } else {
      answer_ = var_name();
      type_ = QueryType::select;
    }
    if (peek().kind == Tok::var || punct("(")) throw UnsupportedFeature("multiple projection variables");
  }

  void group() {
    expect("{");
    while (!punct("}")) {
      if (peek().kind == Tok::end) throw ParseError(peek().pos, "'}'");
      check_unsupported();
      if (punct("{")) throw UnsupportedFeature("nested group");
      if (keyword("FILTER")) {
        filter();
        if (punct(".")) ++k_;
        continue;
      }
      triples();
    }
    ++k_;
  }

  PTerm node_or_var(bool allow_literal) {
    const Token& t = peek();
    PTerm out;
    out.pos = t.pos;
    switch (t.kind) {
      case Tok::var:
        out.kind = PTerm::Kind::var;
        out.value = t.text;
        break;
      case Tok::iri: out.value = t.text; break;
      case Tok::pname: out.value = expand(t.text, t.pos); break;
      case Tok::string:
      case Tok::number:
        if (!allow_literal) throw ParseError(t.pos, "variable or IRI");
        out.kind = PTerm::Kind::literal;
        out.lit = literal(t);
        break;
      case Tok::word:
        if (allow_literal && (t.text == "true" || t.text == "false")) {
          out.kind = PTerm::Kind::literal;
          out.lit = {t.text, iri(ns::xsd, "boolean"), ""};
          break;
        }
        [[fallthrough]];
      default:
        if (t.kind == Tok::punct && t.text == "[") throw UnsupportedFeature("blank node");
        if (t.kind == Tok::punct && t.text == "(") throw UnsupportedFeature("collection");
        throw ParseError(t.pos, allow_literal ? "variable, IRI or literal" : "variable or IRI");
    }
    ++k_;
    return out;
  }

  Literal literal(const Token& t) const {
    if (t.kind == Tok::number) {
      return {t.text, t.text.find('.') == std::string::npos ? vocab::xsd_integer : iri(ns::xsd, "decimal"), ""};
    }
    Literal lit{t.text, "", t.language};
    if (!t.datatype_raw.empty()) lit.datatype = t.datatype_is_pname ? expand(t.datatype_raw, t.pos) : t.datatype_raw;
    return lit;
  }

  std::string expand(const std::string& pname, std::size_t pos) const {
    const auto colon = pname.find(':');
    const auto prefix = pname.substr(0, colon);
    if (auto it = declared_.find(prefix); it != declared_.end()) return it->second + pname.substr(colon + 1);
    if (auto ns = PrefixTable::standard().namespace_of(prefix)) return *ns + pname.substr(colon + 1);
    throw ParseError(pos, "declared prefix for '" + prefix + ":'");
  }

  PTerm predicate() {
    if (punct("^") || punct("!")) throw UnsupportedFeature("property path");
    if (peek().kind == Tok::word && peek().text == "a") {
      PTerm p;
      p.pos = peek().pos;
      p.value = vocab::rdf_type;
      ++k_;
      return p;
    }
    if (peek().kind == Tok::var) throw UnsupportedFeature("variable predicate");
    auto p = node_or_var(false);
    if (punct("/") || punct("|") || punct("*") || punct("+")) throw UnsupportedFeature("property path");
    return p;
  }

  void triples() {
    const auto s = node_or_var(false);
    while (true) {
      const auto p = predicate();
      while (true) {
        triples_.push_back({s, p, node_or_var(true)});
        if (!punct(",")) break;
        ++k_;
      }
      if (punct(";")) {
        ++k_;
        if (punct(";")) continue;
        if (punct(".") || punct("}")) break;
        continue;
      }
      break;
    }
    if (punct(".")) {
      ++k_;
    } else if (!punct("}") && !keyword("FILTER")) {
      check_unsupported();
      throw ParseError(peek().pos, "'.'");
    }
  }

  struct Comparison {
    std::string variable;
    std::string op;
    Literal bound;
  };

  Comparison comparison() {
    static const std::set<std::string> ops = {"<", ">", "<=", ">="};
    auto flip = [](const std::string& op) {
      if (op == "<") return std::string(">");
      if (op == ">") return std::string("<");
      if (op == "<=") return std::string(">=");
      return std::string("<=");
    };
    auto constant = [&]() -> std::optional<Literal> {
      if (peek().kind == Tok::string || peek().kind == Tok::number) return literal(t_[k_++]);
      return std::nullopt;
    };
    Comparison c;
    if (peek().kind == Tok::var) {
      c.variable = t_[k_++].text;
      if (peek().kind != Tok::punct || !ops.contains(peek().text)) throw UnsupportedFeature("FILTER expression");
      c.op = t_[k_++].text;
      auto lit = constant();
      if (!lit) throw UnsupportedFeature("FILTER expression");
      c.bound = *lit;
    } else if (auto lit = constant()) {
      c.bound = *lit;
      if (peek().kind != Tok::punct || !ops.contains(peek().text)) throw UnsupportedFeature("FILTER expression");
      c.op = flip(t_[k_++].text);
      c.variable = var_name();
    } else {
      throw UnsupportedFeature("FILTER expression");
    }
    return c;
  }

  void filter() {
    const auto pos = peek().pos;
    ++k_;
    if (filter_) throw UnsupportedFeature("multiple FILTER clauses");
    if (!punct("(")) throw UnsupportedFeature("FILTER expression");
    ++k_;
    auto first = comparison();
    PFilter f;
    f.pos = pos;
    f.variable = first.variable;
    if (punct("&&")) {
      ++k_;
      auto second = comparison();
      if (second.variable != first.variable) throw UnsupportedFeature("FILTER over several variables");
      if (first.op == "<=" && second.op == ">=") std::swap(first, second);
      if (first.op != ">=" || second.op != "<=") throw UnsupportedFeature("FILTER expression");
      f.mode = TemporalMode::within;
      f.lower = first.bound;
      f.upper = second.bound;
    } else if (first.op == ">") {
      f.mode = TemporalMode::after;
      f.lower = first.bound;
    } else if (first.op == "<") {
      f.mode = TemporalMode::before;
      f.upper = first.bound;
    } else {
      throw UnsupportedFeature("FILTER expression");
    }
    if (!punct(")")) throw UnsupportedFeature("FILTER expression");
    ++k_;
    filter_ = std::move(f);
  }

  SemanticQuery lower(GraphModel model) {
    const std::string filter_var = filter_ ? filter_->variable : std::string();
    if (filter_ && answer_ && filter_var == *answer_) throw UnsupportedFeature("FILTER on the projected variable");

    std::set<std::string> statement_vars;
    std::vector<std::string> statement_order;
    if (model == GraphModel::reified) {
      for (const auto& t : triples_) {
        const bool reify = t.p.is_iri(vocab::rdf_subject) || t.p.is_iri(vocab::rdf_object) ||
                           t.p.is_iri(vocab::sem_role_type);
        if (reify && t.s.is_var() && t.s.value != answer_.value_or("") && statement_vars.insert(t.s.value).second) {
          statement_order.push_back(t.s.value);
        }
      }
    }
    std::map<std::string, std::string> bridges;
    for (const auto& t : triples_) {
      if (t.p.is_iri(vocab::owl_same_as) && t.s.is_var() && t.o.kind == PTerm::Kind::iri &&
          t.s.value != answer_.value_or("") && !statement_vars.contains(t.s.value) && t.s.value != filter_var) {
        auto [it, inserted] = bridges.emplace(t.s.value, t.o.value);
        if (!inserted && it->second != t.o.value) throw UnsupportedFeature("variable bridged to several IRIs");
      }
    }

    auto resolve = [&](const PTerm& term) -> QueryTerm {
      switch (term.kind) {
        case PTerm::Kind::iri: return QueryTerm::node(term.value);
        case PTerm::Kind::literal: return QueryTerm::literal(term.lit);
        case PTerm::Kind::var:
          if (auto it = bridges.find(term.value); it != bridges.end()) return QueryTerm::node(it->second, true);
          if (answer_ && term.value == *answer_) return QueryTerm::variable(term.value);
          if (statement_vars.contains(term.value)) throw UnsupportedFeature("statement variable outside its group");
          throw UnsupportedFeature("variable ?" + term.value + " is neither projected nor bridged");
      }
      return {};
    };

    struct Group {
      const PTerm* subject = nullptr;
      const PTerm* object = nullptr;
      const PTerm* role = nullptr;
    };
    std::map<std::string, Group> groups;
    std::string type;
    const PTriple* support = nullptr;
    std::vector<const PTriple*> plain;
    for (const auto& t : triples_) {
      if (t.o.is_var() && statement_vars.contains(t.o.value)) throw UnsupportedFeature("statement variable as object");
      if (filter_ && t.o.is_var(filter_var)) {
        if (support) throw UnsupportedFeature("FILTER variable bound by several patterns");
        support = &t;
        continue;
      }
      if (filter_ && (t.s.is_var(filter_var) || t.o.is_var(filter_var))) {
        throw UnsupportedFeature("FILTER variable used outside its pattern");
      }
      if (t.s.is_var() && statement_vars.contains(t.s.value)) {
        auto& g = groups[t.s.value];
        const PTerm** slot = t.p.is_iri(vocab::rdf_subject)   ? &g.subject
                             : t.p.is_iri(vocab::rdf_object)  ? &g.object
                             : t.p.is_iri(vocab::sem_role_type) ? &g.role
                                                                : nullptr;
        if (slot == nullptr) throw UnsupportedFeature("statement variable in a plain pattern");
        if (*slot != nullptr) throw UnsupportedFeature("statement with a repeated component");
        *slot = &t.o;
        continue;
      }
      if (t.s.is_var() && bridges.contains(t.s.value) && t.p.is_iri(vocab::owl_same_as) &&
          t.o.is_iri(bridges.at(t.s.value))) {
        continue;
      }
      if (answer_ && t.s.is_var(*answer_) && t.p.is_iri(vocab::rdf_type) && t.o.kind == PTerm::Kind::iri) {
        if (!type.empty()) throw UnsupportedFeature("several type constraints");
        type = t.o.value;
        continue;
      }
      plain.push_back(&t);
    }
    if (filter_ && !support) throw UnsupportedFeature("FILTER variable not bound by a pattern");

    QueryGraph graph;
    std::map<std::string, std::size_t> group_index;
    for (const auto& name : statement_order) {
      const auto& g = groups[name];
      if (g.subject == nullptr || g.object == nullptr) throw UnsupportedFeature("incomplete statement ?" + name);
      if (g.subject->kind == PTerm::Kind::literal) throw ParseError(g.subject->pos, "node in subject position");
      QueryRelation r;
      r.subject = resolve(*g.subject);
      r.object = resolve(*g.object);
      if (g.role) {
        if (g.role->kind != PTerm::Kind::iri) throw UnsupportedFeature("non-IRI role type");
        r.predicate = g.role->value;
      }
      r.provenance = Provenance::reified;
      group_index[name] = graph.relations.size();
      graph.relations.push_back(std::move(r));
    }
    for (const auto* t : plain) {
      QueryRelation r;
      r.subject = resolve(t->s);
      r.predicate = t->p.value;
      r.object = resolve(t->o);
      r.provenance = Provenance::direct;
      graph.relations.push_back(std::move(r));
    }
    if (answer_) graph.variables.push_back({*answer_, type, VariableRole::node, {}});

    std::optional<TemporalConstraint> constraint;
    if (filter_) {
      TemporalConstraint c;
      if (support->s.is_var() && statement_vars.contains(support->s.value)) {
        c.relation = group_index.at(support->s.value);
      } else {
        c.term = resolve(support->s);
      }
      c.predicate = support->p.value;
      c.variable = filter_var;
      c.mode = filter_->mode;
      c.lower = filter_->lower;
      c.upper = filter_->upper;
      constraint = std::move(c);
    }
    return make_query(std::move(graph), type_, std::move(constraint), model);
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
  std::map<std::string, std::string> declared_;
  QueryType type_ = QueryType::ask;
  std::optional<std::string> answer_;
  std::vector<PTriple> triples_;
  std::optional<PFilter> filter_;
};

}  // namespace

SparqlText emit(const SemanticQuery& q, const EmitOptions& options) {
  return {Emitter(q).run(options), q.model};
}

SemanticQuery parse(std::string_view text, GraphModel model) {
  return Parser(Lexer(text).run()).run(model);
}

}  // namespace eventqa
