#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jelly {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed N-Triples/N-Quads input. Line and column are 1-based and point
/// at the first offending byte.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Wire-level failure: malformed bytes, truncation, invalid UTF-8.
class WireError : public Error {
public:
  using Error::Error;
};

/// Stream-level failure in the encoder or decoder: option violations,
/// unknown lookup ids, repeats without context.
class CodecError : public Error {
public:
  using Error::Error;
};

/// Transport failure: closed channels, broken framing, corrupt gzip.
class TransportError : public Error {
public:
  using Error::Error;
};

}  // namespace jelly
