#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "jelly/rdf.hpp"

namespace jelly::nt {

/// Parses one logical N-Triples/N-Quads line (terminating "." included).
/// A fourth term yields a quad. With generalized=false the strict W3C term
/// placement rules are enforced. `line_number` only seeds error positions.
Statement parse_statement(std::string_view line, bool generalized = false,
                          std::size_t line_number = 1);

/// Serializes a statement as one canonical line, trailing " .\n" included.
/// Escapes only what the grammar requires; UTF-8 passes through verbatim.
/// Throws CodecError for statements N-Triples/N-Quads cannot express
/// (quoted triples, non-strict term placement).
std::string write_statement(const Statement& s);

/// Streaming document reader: yields statements in document order, skipping
/// blank lines and comment lines. Memory use is independent of document
/// length. The first malformed line aborts with a ParseError carrying a
/// 1-based line/column position.
class Reader {
public:
  explicit Reader(std::istream& in, bool generalized = false)
      : in_(in), generalized_(generalized) {}

  /// Next statement, or nullopt at end of input.
  std::optional<Statement> next();

  std::size_t line_number() const { return line_number_; }

private:
  std::istream& in_;
  bool generalized_;
  std::size_t line_number_ = 0;
  std::string buf_;
};

/// Statement-at-a-time writer over any ostream.
class Writer {
public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void write(const Statement& s);

private:
  std::ostream& out_;
};

}  // namespace jelly::nt
