#include "eventqa/ntriples.hpp"

#include <zlib.h>

#include <cctype>
#include <memory>
#include <sstream>

namespace eventqa {

MalformedLine::MalformedLine(std::size_t line_no, std::string reason)
    : DataError("line " + std::to_string(line_no) + ": " + reason),
      line_(line_no),
      reason_(std::move(reason)) {}

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  std::optional<Triple> parse() {
    skip_ws();
    if (at_end() || peek() == '#') return std::nullopt;
    Triple t;
    t.subject = subject();
    skip_ws();
    if (at_end() || peek() == '.') fail("missing predicate");
    if (peek() != '<') fail("predicate must be an IRI");
    t.predicate = Term::make_iri(iri());
    skip_ws();
    if (at_end() || peek() == '.') fail("missing object");
    t.object = object();
    skip_ws();
    if (at_end() || peek() != '.') fail("missing '.' terminator");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing content after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const { throw MalformedLine(line_no_, reason); }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) ++pos_;
  }

  Term subject() {
    if (peek() == '<') return Term::make_iri(iri());
    if (s_.substr(pos_).starts_with("_:")) return Term::make_blank(blank());
    fail("subject must be an IRI or blank node");
  }

  Term object() {
    const char c = peek();
    if (c == '<') return Term::make_iri(iri());
    if (c == '"') return Term::make_literal(literal());
    if (s_.substr(pos_).starts_with("_:")) return Term::make_blank(blank());
    fail("object must be an IRI, blank node or literal");
  }

  std::string iri() {
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = s_[pos_++];
      if (c == '>') break;
      if (c == ' ' || c == '<' || c == '"') fail("invalid character in IRI");
      if (c == '\\') {
        out += unicode_escape();
        continue;
      }
      out += c;
    }
    if (out.empty()) fail("empty IRI");
    return out;
  }

  std::string blank() {
    pos_ += 2;
    const auto start = pos_;
    while (!at_end() && peek() != ' ' && peek() != '\t') ++pos_;
    // A label may contain '.' but never ends with it.
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return std::string(s_.substr(start, pos_ - start));
  }

  Literal literal() {
    ++pos_;  // '"'
    Literal lit;
    while (true) {
      if (at_end()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lit.lexical += c;
        continue;
      }
      if (at_end()) fail("dangling escape");
      const char e = s_[pos_];
      switch (e) {
        case 't': lit.lexical += '\t'; ++pos_; break;
        case 'b': lit.lexical += '\b'; ++pos_; break;
        case 'n': lit.lexical += '\n'; ++pos_; break;
        case 'r': lit.lexical += '\r'; ++pos_; break;
        case 'f': lit.lexical += '\f'; ++pos_; break;
        case '"': lit.lexical += '"'; ++pos_; break;
        case '\'': lit.lexical += '\''; ++pos_; break;
        case '\\': lit.lexical += '\\'; ++pos_; break;
        case 'u':
        case 'U': lit.lexical += unicode_escape(); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    if (!at_end() && peek() == '@') {
      ++pos_;
      const auto start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
      lit.language = std::string(s_.substr(start, pos_ - start));
    } else if (s_.substr(pos_).starts_with("^^")) {
      pos_ += 2;
      if (at_end() || peek() != '<') fail("datatype must be an IRI");
      lit.datatype = iri();
    }
    return lit;
  }

  // Expects pos_ at 'u' or 'U' (the backslash already consumed).
  std::string unicode_escape() {
    if (at_end()) fail("dangling escape");
    const char kind = s_[pos_++];
    std::size_t width = 0;
    if (kind == 'u') width = 4;
    else if (kind == 'U') width = 8;
    else fail("invalid escape in IRI");
    if (pos_ + width > s_.size()) fail("truncated unicode escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const char h = s_[pos_++];
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= static_cast<char32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') cp |= static_cast<char32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') cp |= static_cast<char32_t>(h - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    if (cp > 0x10FFFF) fail("code point out of range");
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  std::string_view s_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

std::string escape_literal(std::string_view lex) {
  std::string out;
  out.reserve(lex.size());
  for (char c : lex) {
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

struct GzCloser {
  void operator()(gzFile f) const { gzclose(f); }
};

}  // namespace

std::optional<Triple> parse_ntriples_line(std::string_view line, std::size_t line_no) {
  return LineParser(line, line_no).parse();
}

std::optional<Triple> NTriplesReader::next() {
  while (std::getline(in_, buffer_)) {
    ++line_no_;
    try {
      if (auto t = parse_ntriples_line(buffer_, line_no_)) return t;
    } catch (const MalformedLine& e) {
      if (mode_ == ParseMode::strict) throw;
      diagnostics_.push_back(e);
    }
  }
  return std::nullopt;
}

std::vector<Triple> parse_ntriples(std::istream& in, ParseMode mode) {
  NTriplesReader reader(in, mode);
  std::vector<Triple> out;
  while (auto t = reader.next()) out.push_back(std::move(*t));
  return out;
}

std::vector<Triple> parse_ntriples(std::string_view text, ParseMode mode) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in, mode);
}

std::size_t for_each_triple(const std::filesystem::path& path, ParseMode mode,
                            const std::function<void(Triple&&)>& visit,
                            std::vector<MalformedLine>* diagnostics) {
  // gzopen reads uncompressed files transparently.
  std::unique_ptr<gzFile_s, GzCloser> file(gzopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());
  std::size_t count = 0;
  std::size_t line_no = 0;
  std::string line;
  char chunk[1 << 16];
  bool more = true;
  while (more) {
    line.clear();
    more = false;
    while (gzgets(file.get(), chunk, sizeof chunk) != nullptr) {
      line += chunk;
      if (!line.empty() && line.back() == '\n') {
        more = true;
        break;
      }
    }
    if (!more && line.empty()) break;
    more = true;
    ++line_no;
    try {
      if (auto t = parse_ntriples_line(line, line_no)) {
        visit(std::move(*t));
        ++count;
      }
    } catch (const MalformedLine& e) {
      if (mode == ParseMode::strict) throw;
      if (diagnostics) diagnostics->push_back(e);
    }
  }
  int err = 0;
  gzerror(file.get(), &err);
  if (err != Z_OK && err != Z_STREAM_END) throw IoError("read error in " + path.string());
  return count;
}

std::vector<Triple> read_ntriples_file(const std::filesystem::path& path, ParseMode mode) {
  std::vector<Triple> out;
  for_each_triple(path, mode, [&](Triple&& t) { out.push_back(std::move(t)); });
  return out;
}

std::string to_ntriples(const Term& term) {
  switch (term.kind) {
    case TermKind::iri: return "<" + term.value + ">";
    case TermKind::blank: return "_:" + term.value;
    case TermKind::literal: {
      std::string out = "\"" + escape_literal(term.value) + "\"";
      if (!term.language.empty()) out += "@" + term.language;
      else if (!term.datatype.empty()) out += "^^<" + term.datatype + ">";
      return out;
    }
  }
  return {};
}

std::string to_ntriples(const Triple& triple) {
  return to_ntriples(triple.subject) + " " + to_ntriples(triple.predicate) + " " +
         to_ntriples(triple.object) + " .";
}

}  // namespace eventqa
