#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "jelly/error.hpp"

namespace jelly::wire {

using Bytes = std::vector<std::uint8_t>;

/// Largest admissible lookup table size.
inline constexpr std::uint32_t kMaxTableSize = 1u << 28;
/// Smallest admissible name table size.
inline constexpr std::uint32_t kMinNameTableSize = 8;
/// The one protocol version this implementation speaks.
inline constexpr std::uint32_t kProtocolVersion = 1;

enum class PhysicalType : std::uint8_t { Triples = 0, Quads = 1 };

/// Stream header negotiated once, as the first row. Table maxima bound the
/// ids the producer may ever reference; 0 disables the prefix table or, for
/// the datatype table, forbids typed literals.
struct StreamOptions {
  std::string stream_name;
  PhysicalType physical_type = PhysicalType::Triples;
  bool generalized = false;
  bool rdf_star = false;
  std::uint32_t max_prefix_table = 150;
  std::uint32_t max_name_table = 4000;
  std::uint32_t max_datatype_table = 32;
  std::uint32_t version = kProtocolVersion;

  friend bool operator==(const StreamOptions&, const StreamOptions&) = default;
};

/// nullopt when the options are valid, otherwise a description naming the
/// violated bound.
std::optional<std::string> validate_options(const StreamOptions& opts);

enum class LookupKind : std::uint8_t { Prefix, Name, Datatype };

/// New or replacing entry in one of the three lookup tables.
struct LookupEntry {
  LookupKind table = LookupKind::Name;
  std::uint32_t id = 0;
  std::string value;

  friend bool operator==(const LookupEntry&, const LookupEntry&) = default;
};

/// IRI as a (prefix id, name id) pair; id 0 means that component is empty.
struct WireIri {
  std::uint32_t prefix_id = 0;
  std::uint32_t name_id = 0;

  friend bool operator==(const WireIri&, const WireIri&) = default;
};

struct WireBNode {
  std::string label;

  friend bool operator==(const WireBNode&, const WireBNode&) = default;
};

struct WireLiteral {
  enum class Kind : std::uint8_t { None, Lang, Datatype };

  std::string lexical;
  Kind kind = Kind::None;
  std::string langtag;            // kind == Lang
  std::uint32_t datatype_id = 0;  // kind == Datatype

  static WireLiteral simple(std::string lexical) {
    return {std::move(lexical), Kind::None, {}, 0};
  }
  static WireLiteral lang(std::string lexical, std::string tag) {
    return {std::move(lexical), Kind::Lang, std::move(tag), 0};
  }
  static WireLiteral datatype(std::string lexical, std::uint32_t id) {
    return {std::move(lexical), Kind::Datatype, {}, id};
  }

  friend bool operator==(const WireLiteral&, const WireLiteral&) = default;
};

/// Reuse the term last seen in the same statement position.
struct WireRepeat {
  friend bool operator==(const WireRepeat&, const WireRepeat&) = default;
};

/// The default graph; valid only in the graph position of a quad.
struct WireDefaultGraph {
  friend bool operator==(const WireDefaultGraph&, const WireDefaultGraph&) = default;
};

struct WireTripleTerms;

/// Quoted (RDF-star) triple as a term. The payload is shared, immutable.
struct WireQuoted {
  std::shared_ptr<const WireTripleTerms> terms;

  friend bool operator==(const WireQuoted& a, const WireQuoted& b);
};

using WireTerm = std::variant<WireIri, WireBNode, WireLiteral, WireQuoted, WireRepeat,
                              WireDefaultGraph>;

struct WireTripleTerms {
  WireTerm subject;
  WireTerm predicate;
  WireTerm object;

  friend bool operator==(const WireTripleTerms&, const WireTripleTerms&) = default;
};

inline bool operator==(const WireQuoted& a, const WireQuoted& b) {
  return *a.terms == *b.terms;
}

inline WireQuoted make_quoted(WireTerm s, WireTerm p, WireTerm o) {
  return WireQuoted{std::make_shared<const WireTripleTerms>(
      WireTripleTerms{std::move(s), std::move(p), std::move(o)})};
}

struct RowTriple {
  WireTerm subject;
  WireTerm predicate;
  WireTerm object;

  friend bool operator==(const RowTriple&, const RowTriple&) = default;
};

struct RowQuad {
  WireTerm subject;
  WireTerm predicate;
  WireTerm object;
  WireTerm graph;

  friend bool operator==(const RowQuad&, const RowQuad&) = default;
};

/// Atomic stream element: header, lookup entry, triple, or quad.
using StreamRow = std::variant<StreamOptions, LookupEntry, RowTriple, RowQuad>;

/// Unit of transmission: an ordered batch of rows.
struct StreamFrame {
  std::vector<StreamRow> rows;

  friend bool operator==(const StreamFrame&, const StreamFrame&) = default;
};

inline bool is_statement_row(const StreamRow& row) {
  return std::holds_alternative<RowTriple>(row) || std::holds_alternative<RowQuad>(row);
}

/// Serializes a frame. Deterministic: fields in ascending field-number
/// order, nothing else. An empty frame is zero bytes. Throws WireError on
/// invalid UTF-8 in any string field.
Bytes encode_frame(const StreamFrame& frame);

/// Inverse of encode_frame. Unknown fields are skipped; absent scalar
/// fields read as zero/empty. Throws WireError on truncation, a row with no
/// variant set, or invalid UTF-8.
StreamFrame decode_frame(std::span<const std::uint8_t> bytes);

/// True if the bytes are well-formed UTF-8.
bool valid_utf8(std::string_view s);

}  // namespace jelly::wire
