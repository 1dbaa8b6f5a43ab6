#include "jelly/ntriples.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>

#include "jelly/error.hpp"

namespace jelly::nt {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

unsigned hex_val(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
  return static_cast<unsigned>(c - 'A' + 10);
}

void append_utf8(std::string& out, std::uint32_t cp) {
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

// Blank node label alphabet. Deliberately a pragmatic subset of the W3C
// production: ASCII letters, digits, '_', '-', '.' (internal only), plus any
// non-ASCII byte.
bool label_first_char(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c >= 0x80;
}
bool label_char(unsigned char c) {
  return label_first_char(c) || c == '-' || c == '.';
}

class LineParser {
public:
  LineParser(std::string_view line, bool generalized, std::size_t line_number)
      : line_(line), generalized_(generalized), line_number_(line_number) {}

  Statement parse() {
    skip_ws();
    std::size_t subject_at = pos_;
    Term subject = parse_term("subject");
    require_gap();
    std::size_t predicate_at = pos_;
    Term predicate = parse_term("predicate");
    require_gap();
    Term object = parse_term("object");
    skip_ws();

    std::optional<GraphName> graph;
    if (!at_end() && peek() != '.') {
      std::size_t at = pos_;
      Term g = parse_term("graph name");
      if (!generalized_ && !valid_strict_graph(g))
        fail(at, "graph name must be an IRI or blank node");
      graph = GraphName::named(std::move(g));
      skip_ws();
    }

    if (at_end() || peek() != '.') fail(pos_, "expected '.' terminator");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail(pos_, "unexpected content after '.'");

    if (!generalized_) {
      if (!valid_strict_subject(subject))
        fail(subject_at, "literal subject requires generalized mode");
      if (!valid_strict_predicate(predicate))
        fail(predicate_at, "predicate must be an IRI");
    }
    if (graph)
      return Statement::quad(std::move(subject), std::move(predicate),
                             std::move(object), std::move(*graph));
    return Statement::triple(std::move(subject), std::move(predicate),
                             std::move(object));
  }

private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) {
    throw ParseError(line_number_, at + 1, msg);
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }

  void skip_ws() {
    while (!at_end() && is_ws(peek())) ++pos_;
  }

  void require_gap() {
    if (at_end() || !is_ws(peek())) fail(pos_, "expected whitespace between terms");
    skip_ws();
  }

  std::uint32_t parse_uchar(std::size_t esc_start, unsigned digits) {
    std::uint32_t cp = 0;
    for (unsigned i = 0; i < digits; ++i) {
      if (at_end() || !is_hex(peek())) fail(pos_, "bad \\u escape");
      cp = (cp << 4) | hex_val(peek());
      ++pos_;
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      fail(esc_start, "escape is not a Unicode scalar value");
    return cp;
  }

  Term parse_iri() {
    ++pos_;  // consume '<'
    std::string value;
    while (true) {
      if (at_end()) fail(pos_, "unterminated IRI");
      unsigned char c = static_cast<unsigned char>(peek());
      if (c == '>') {
        ++pos_;
        if (value.empty()) fail(pos_ - 2, "empty IRI");
        return Term::iri(std::move(value));
      }
      if (c == '\\') {
        std::size_t esc = pos_;
        ++pos_;
        if (at_end()) fail(esc, "truncated escape");
        char e = peek();
        ++pos_;
        if (e == 'u')
          append_utf8(value, parse_uchar(esc, 4));
        else if (e == 'U')
          append_utf8(value, parse_uchar(esc, 8));
        else
          fail(esc, "invalid escape in IRI");
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`')
        fail(pos_, "character not allowed in IRI");
      value += static_cast<char>(c);
      ++pos_;
    }
  }

  Term parse_bnode() {
    pos_ += 2;  // consume '_:'
    std::size_t start = pos_;
    if (at_end() || !label_first_char(static_cast<unsigned char>(peek())))
      fail(pos_, "invalid blank node label");
    std::string label;
    while (!at_end() && label_char(static_cast<unsigned char>(peek()))) {
      // A '.' is part of the label only when another label char follows.
      if (peek() == '.') {
        if (pos_ + 1 >= line_.size() ||
            !label_char(static_cast<unsigned char>(line_[pos_ + 1])))
          break;
      }
      label += peek();
      ++pos_;
    }
    if (label.empty()) fail(start, "invalid blank node label");
    return Term::bnode(std::move(label));
  }

  Term parse_literal() {
    ++pos_;  // consume '"'
    std::string lexical;
    while (true) {
      if (at_end()) fail(pos_, "unterminated literal");
      unsigned char c = static_cast<unsigned char>(peek());
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\n' || c == '\r') fail(pos_, "raw newline in literal");
      if (c == '\\') {
        std::size_t esc = pos_;
        ++pos_;
        if (at_end()) fail(esc, "truncated escape");
        char e = peek();
        ++pos_;
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'b': lexical += '\b'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 'f': lexical += '\f'; break;
          case '"': lexical += '"'; break;
          case '\'': lexical += '\''; break;
          case '\\': lexical += '\\'; break;
          case 'u': append_utf8(lexical, parse_uchar(esc, 4)); break;
          case 'U': append_utf8(lexical, parse_uchar(esc, 8)); break;
          default: fail(esc, "invalid escape in literal");
        }
        continue;
      }
      lexical += static_cast<char>(c);
      ++pos_;
    }

    if (!at_end() && peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      std::string tag;
      while (!at_end() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        tag += peek();
        ++pos_;
      }
      if (tag.empty()) fail(start, "empty language tag");
      try {
        return Term::literal(std::move(lexical), LiteralKind::lang(std::move(tag)));
      } catch (const std::invalid_argument& e) {
        fail(start, e.what());
      }
    }
    if (pos_ + 1 < line_.size() && peek() == '^' && line_[pos_ + 1] == '^') {
      pos_ += 2;
      if (at_end() || peek() != '<') fail(pos_, "expected datatype IRI after '^^'");
      Term dt = parse_iri();
      return Term::literal(std::move(lexical), LiteralKind::typed(dt.iri_value()));
    }
    return Term::literal(std::move(lexical));
  }

  Term parse_term(const char* position_name) {
    if (at_end()) fail(pos_, std::string("missing ") + position_name);
    char c = peek();
    if (c == '<') return parse_iri();
    if (c == '_' && pos_ + 1 < line_.size() && line_[pos_ + 1] == ':')
      return parse_bnode();
    if (c == '"') return parse_literal();
    fail(pos_, std::string("expected term at ") + position_name);
  }

  std::string_view line_;
  bool generalized_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

void write_iri(std::string& out, const std::string& value) {
  out += '<';
  for (unsigned char c : value) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  out += '>';
}

void write_label(std::string& out, const std::string& label) {
  if (!label_first_char(static_cast<unsigned char>(label.front())))
    throw CodecError("blank node label not expressible in N-Triples: '" + label + "'");
  for (std::size_t i = 0; i < label.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(label[i]);
    bool last = i + 1 == label.size();
    if (!label_char(c) || (c == '.' && last))
      throw CodecError("blank node label not expressible in N-Triples: '" + label +
                       "'");
  }
  out += "_:";
  out += label;
}

void write_term(std::string& out, const Term& t) {
  switch (t.kind()) {
    case TermKind::Iri:
      write_iri(out, t.iri_value());
      return;
    case TermKind::BlankNode:
      write_label(out, t.bnode_label());
      return;
    case TermKind::Literal: {
      out += '"';
      for (char c : t.lexical()) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\r': out += "\\r"; break;
          default: out += c;
        }
      }
      out += '"';
      const LiteralKind& k = t.literal_kind();
      if (k.is_lang()) {
        out += '@';
        out += k.lang_tag();
      } else if (k.is_typed()) {
        out += "^^";
        write_iri(out, k.datatype());
      }
      return;
    }
    case TermKind::QuotedTriple:
      throw CodecError("quoted triples are not expressible in N-Triples/N-Quads");
  }
}

}  // namespace

Statement parse_statement(std::string_view line, bool generalized,
                          std::size_t line_number) {
  return LineParser(line, generalized, line_number).parse();
}

std::string write_statement(const Statement& s) {
  if (!valid_strict_subject(s.subject()))
    throw CodecError("literal subject is not expressible in N-Triples");
  if (!valid_strict_predicate(s.predicate()))
    throw CodecError("non-IRI predicate is not expressible in N-Triples");
  std::string out;
  write_term(out, s.subject());
  out += ' ';
  write_term(out, s.predicate());
  out += ' ';
  write_term(out, s.object());
  if (s.is_quad() && !s.graph().is_default()) {
    const Term& g = s.graph().term();
    if (!valid_strict_graph(g))
      throw CodecError("graph name must be an IRI or blank node in N-Quads");
    out += ' ';
    write_term(out, g);
  }
  out += " .\n";
  return out;
}

std::optional<Statement> Reader::next() {
  while (std::getline(in_, buf_)) {
    ++line_number_;
    if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
    std::size_t i = 0;
    while (i < buf_.size() && is_ws(buf_[i])) ++i;
    if (i == buf_.size() || buf_[i] == '#') continue;
    return parse_statement(buf_, generalized_, line_number_);
  }
  return std::nullopt;
}

void Writer::write(const Statement& s) { out_ << write_statement(s); }

}  // namespace jelly::nt
