#include "jelly/wire.hpp"

#include <cstring>
#include <limits>

namespace jelly::wire {

std::optional<std::string> validate_options(const StreamOptions& o) {
  if (o.max_prefix_table > kMaxTableSize)
    return "max prefix table size " + std::to_string(o.max_prefix_table) +
           " exceeds 2^28";
  if (o.max_name_table > kMaxTableSize)
    return "max name table size " + std::to_string(o.max_name_table) + " exceeds 2^28";
  if (o.max_datatype_table > kMaxTableSize)
    return "max datatype table size " + std::to_string(o.max_datatype_table) +
           " exceeds 2^28";
  if (o.max_name_table < kMinNameTableSize)
    return "max name table size " + std::to_string(o.max_name_table) +
           " is below the minimum of " + std::to_string(kMinNameTableSize);
  if (o.physical_type != PhysicalType::Triples && o.physical_type != PhysicalType::Quads)
    return "unknown physical stream type";
  if (o.version != kProtocolVersion)
    return "unsupported version " + std::to_string(o.version);
  return std::nullopt;
}

bool valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  const auto* end = p + s.size();
  while (p < end) {
    unsigned char c = *p;
    if (c < 0x80) {
      ++p;
      continue;
    }
    int len;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (end - p < len) return false;
    for (int i = 1; i < len; ++i) {
      if ((p[i] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (p[i] & 0x3F);
    }
    // Reject overlong forms, surrogates, and out-of-range code points.
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    p += len;
  }
  return true;
}

namespace {

constexpr std::uint32_t kWtVarint = 0;
constexpr std::uint32_t kWt64 = 1;
constexpr std::uint32_t kWtLen = 2;
constexpr std::uint32_t kWt32 = 5;

// Field numbers, matching proto/jelly.proto.
enum RowField : std::uint32_t {
  kRowOptions = 1,
  kRowTriple = 2,
  kRowQuad = 3,
  kRowPrefixEntry = 4,
  kRowNameEntry = 5,
  kRowDatatypeEntry = 6,
};
enum OptionsField : std::uint32_t {
  kOptStreamName = 1,
  kOptPhysicalType = 2,
  kOptGeneralized = 3,
  kOptRdfStar = 4,
  kOptMaxNameTable = 5,
  kOptMaxPrefixTable = 6,
  kOptMaxDatatypeTable = 7,
  kOptVersion = 8,
};
enum EntryField : std::uint32_t { kEntryId = 1, kEntryValue = 2 };
enum IriField : std::uint32_t { kIriPrefixId = 1, kIriNameId = 2 };
enum LiteralField : std::uint32_t {
  kLitLexical = 1,
  kLitLangtag = 2,
  kLitDatatypeId = 3,
};

// Term members sit at group_base + offset; subject/predicate/object/graph
// groups start at 0/5/10/15.
constexpr std::uint32_t kTermIri = 1;
constexpr std::uint32_t kTermBNode = 2;
constexpr std::uint32_t kTermLiteral = 3;
constexpr std::uint32_t kTermQuoted = 4;
constexpr std::uint32_t kTermRepeat = 5;
constexpr std::uint32_t kTermDefaultGraph = 6;
constexpr std::uint32_t kSubjectBase = 0;
constexpr std::uint32_t kPredicateBase = 5;
constexpr std::uint32_t kObjectBase = 10;
constexpr std::uint32_t kGraphBase = 15;

constexpr int kMaxNestingDepth = 64;

std::size_t varint_size(std::uint64_t v) {
  std::size_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

void put_varint(Bytes& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::size_t tag_size(std::uint32_t field) {
  return varint_size(static_cast<std::uint64_t>(field) << 3);
}

void put_tag(Bytes& out, std::uint32_t field, std::uint32_t wt) {
  put_varint(out, (static_cast<std::uint64_t>(field) << 3) | wt);
}

void check_utf8(const std::string& s, const char* what) {
  if (!valid_utf8(s))
    throw WireError(std::string("invalid UTF-8 in ") + what);
}

// --- size calculation (mirrors the writers below) ---

std::size_t sz_uint_field(std::uint32_t field, std::uint64_t v) {
  return v == 0 ? 0 : tag_size(field) + varint_size(v);
}

std::size_t sz_str_field(std::uint32_t field, const std::string& s) {
  return s.empty() ? 0 : tag_size(field) + varint_size(s.size()) + s.size();
}

std::size_t sz_options(const StreamOptions& o) {
  std::size_t n = 0;
  n += sz_str_field(kOptStreamName, o.stream_name);
  n += sz_uint_field(kOptPhysicalType, static_cast<std::uint64_t>(o.physical_type));
  n += sz_uint_field(kOptGeneralized, o.generalized ? 1 : 0);
  n += sz_uint_field(kOptRdfStar, o.rdf_star ? 1 : 0);
  n += sz_uint_field(kOptMaxNameTable, o.max_name_table);
  n += sz_uint_field(kOptMaxPrefixTable, o.max_prefix_table);
  n += sz_uint_field(kOptMaxDatatypeTable, o.max_datatype_table);
  n += sz_uint_field(kOptVersion, o.version);
  return n;
}

std::size_t sz_entry(const LookupEntry& e) {
  return sz_uint_field(kEntryId, e.id) + sz_str_field(kEntryValue, e.value);
}

std::size_t sz_iri(const WireIri& iri) {
  return sz_uint_field(kIriPrefixId, iri.prefix_id) +
         sz_uint_field(kIriNameId, iri.name_id);
}

std::size_t sz_literal(const WireLiteral& lit) {
  std::size_t n = sz_str_field(kLitLexical, lit.lexical);
  switch (lit.kind) {
    case WireLiteral::Kind::None:
      break;
    case WireLiteral::Kind::Lang:
      // Oneof member: present even when empty.
      n += tag_size(kLitLangtag) + varint_size(lit.langtag.size()) + lit.langtag.size();
      break;
    case WireLiteral::Kind::Datatype:
      n += tag_size(kLitDatatypeId) + varint_size(lit.datatype_id);
      break;
  }
  return n;
}

std::size_t sz_term(const WireTerm& term, std::uint32_t base);

std::size_t sz_triple_terms(const WireTerm& s, const WireTerm& p, const WireTerm& o) {
  return sz_term(s, kSubjectBase) + sz_term(p, kPredicateBase) +
         sz_term(o, kObjectBase);
}

std::size_t sz_len_field(std::uint32_t field, std::size_t inner) {
  return tag_size(field) + varint_size(inner) + inner;
}

std::size_t sz_term(const WireTerm& term, std::uint32_t base) {
  switch (term.index()) {
    case 0:  // WireIri
      return sz_len_field(base + kTermIri, sz_iri(std::get<WireIri>(term)));
    case 1: {  // WireBNode
      const auto& label = std::get<WireBNode>(term).label;
      return sz_len_field(base + kTermBNode, label.size());
    }
    case 2:  // WireLiteral
      return sz_len_field(base + kTermLiteral, sz_literal(std::get<WireLiteral>(term)));
    case 3: {  // WireQuoted
      const auto& q = *std::get<WireQuoted>(term).terms;
      return sz_len_field(base + kTermQuoted,
                          sz_triple_terms(q.subject, q.predicate, q.object));
    }
    case 4:  // WireRepeat
      return sz_len_field(base + kTermRepeat, 0);
    default:  // WireDefaultGraph
      if (base != kGraphBase)
        throw WireError("default graph is only valid in the graph position");
      return sz_len_field(base + kTermDefaultGraph, 0);
  }
}

std::size_t sz_row(const StreamRow& row) {
  switch (row.index()) {
    case 0:
      return sz_len_field(kRowOptions, sz_options(std::get<StreamOptions>(row)));
    case 1: {
      const auto& e = std::get<LookupEntry>(row);
      std::uint32_t field = e.table == LookupKind::Prefix  ? kRowPrefixEntry
                            : e.table == LookupKind::Name ? kRowNameEntry
                                                          : kRowDatatypeEntry;
      return sz_len_field(field, sz_entry(e));
    }
    case 2: {
      const auto& t = std::get<RowTriple>(row);
      return sz_len_field(kRowTriple,
                          sz_triple_terms(t.subject, t.predicate, t.object));
    }
    default: {
      const auto& q = std::get<RowQuad>(row);
      return sz_len_field(kRowQuad,
                          sz_triple_terms(q.subject, q.predicate, q.object) +
                              sz_term(q.graph, kGraphBase));
    }
  }
}

// --- writers ---

void wr_uint_field(Bytes& out, std::uint32_t field, std::uint64_t v) {
  if (v == 0) return;
  put_tag(out, field, kWtVarint);
  put_varint(out, v);
}

void wr_str_field(Bytes& out, std::uint32_t field, const std::string& s,
                  const char* what) {
  if (s.empty()) return;
  check_utf8(s, what);
  put_tag(out, field, kWtLen);
  put_varint(out, s.size());
  out.insert(out.end(), s.begin(), s.end());
}

void wr_options(Bytes& out, const StreamOptions& o) {
  wr_str_field(out, kOptStreamName, o.stream_name, "stream name");
  wr_uint_field(out, kOptPhysicalType, static_cast<std::uint64_t>(o.physical_type));
  wr_uint_field(out, kOptGeneralized, o.generalized ? 1 : 0);
  wr_uint_field(out, kOptRdfStar, o.rdf_star ? 1 : 0);
  wr_uint_field(out, kOptMaxNameTable, o.max_name_table);
  wr_uint_field(out, kOptMaxPrefixTable, o.max_prefix_table);
  wr_uint_field(out, kOptMaxDatatypeTable, o.max_datatype_table);
  wr_uint_field(out, kOptVersion, o.version);
}

void wr_entry(Bytes& out, const LookupEntry& e) {
  wr_uint_field(out, kEntryId, e.id);
  wr_str_field(out, kEntryValue, e.value, "lookup entry value");
}

void wr_iri(Bytes& out, const WireIri& iri) {
  wr_uint_field(out, kIriPrefixId, iri.prefix_id);
  wr_uint_field(out, kIriNameId, iri.name_id);
}

void wr_literal(Bytes& out, const WireLiteral& lit) {
  wr_str_field(out, kLitLexical, lit.lexical, "literal lexical form");
  switch (lit.kind) {
    case WireLiteral::Kind::None:
      break;
    case WireLiteral::Kind::Lang:
      check_utf8(lit.langtag, "language tag");
      put_tag(out, kLitLangtag, kWtLen);
      put_varint(out, lit.langtag.size());
      out.insert(out.end(), lit.langtag.begin(), lit.langtag.end());
      break;
    case WireLiteral::Kind::Datatype:
      put_tag(out, kLitDatatypeId, kWtVarint);
      put_varint(out, lit.datatype_id);
      break;
  }
}

void wr_term(Bytes& out, const WireTerm& term, std::uint32_t base);

void wr_triple_terms(Bytes& out, const WireTerm& s, const WireTerm& p,
                     const WireTerm& o) {
  wr_term(out, s, kSubjectBase);
  wr_term(out, p, kPredicateBase);
  wr_term(out, o, kObjectBase);
}

void wr_term(Bytes& out, const WireTerm& term, std::uint32_t base) {
  switch (term.index()) {
    case 0: {
      const auto& iri = std::get<WireIri>(term);
      put_tag(out, base + kTermIri, kWtLen);
      put_varint(out, sz_iri(iri));
      wr_iri(out, iri);
      return;
    }
    case 1: {
      const auto& label = std::get<WireBNode>(term).label;
      check_utf8(label, "blank node label");
      put_tag(out, base + kTermBNode, kWtLen);
      put_varint(out, label.size());
      out.insert(out.end(), label.begin(), label.end());
      return;
    }
    case 2: {
      const auto& lit = std::get<WireLiteral>(term);
      put_tag(out, base + kTermLiteral, kWtLen);
      put_varint(out, sz_literal(lit));
      wr_literal(out, lit);
      return;
    }
    case 3: {
      const auto& q = *std::get<WireQuoted>(term).terms;
      put_tag(out, base + kTermQuoted, kWtLen);
      put_varint(out, sz_triple_terms(q.subject, q.predicate, q.object));
      wr_triple_terms(out, q.subject, q.predicate, q.object);
      return;
    }
    case 4:
      put_tag(out, base + kTermRepeat, kWtLen);
      put_varint(out, 0);
      return;
    default:
      if (base != kGraphBase)
        throw WireError("default graph is only valid in the graph position");
      put_tag(out, base + kTermDefaultGraph, kWtLen);
      put_varint(out, 0);
      return;
  }
}

// --- reader ---

class Cursor {
public:
  explicit Cursor(std::span<const std::uint8_t> data) : data_(data) {}

  bool done() const { return pos_ >= data_.size(); }

  std::uint64_t varint() {
    std::uint64_t v = 0;
    int shift = 0;
    for (int i = 0; i < 10; ++i) {
      if (pos_ >= data_.size()) throw WireError("truncated varint");
      std::uint8_t b = data_[pos_++];
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) return v;
      shift += 7;
    }
    throw WireError("varint longer than 10 bytes");
  }

  std::span<const std::uint8_t> bytes(std::size_t n) {
    if (data_.size() - pos_ < n) throw WireError("truncated length-delimited field");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::span<const std::uint8_t> len_delimited() {
    std::uint64_t n = varint();
    if (n > data_.size() - pos_) throw WireError("truncated length-delimited field");
    return bytes(static_cast<std::size_t>(n));
  }

  std::string str(const char* what) {
    auto s = len_delimited();
    std::string out(reinterpret_cast<const char*>(s.data()), s.size());
    check_utf8(out, what);
    return out;
  }

  void skip(std::uint32_t wt) {
    switch (wt) {
      case kWtVarint:
        varint();
        return;
      case kWt64:
        bytes(8);
        return;
      case kWtLen:
        len_delimited();
        return;
      case kWt32:
        bytes(4);
        return;
      default:
        throw WireError("unsupported wire type " + std::to_string(wt));
    }
  }

private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

StreamOptions rd_options(std::span<const std::uint8_t> data) {
  StreamOptions o;
  o.max_prefix_table = 0;
  o.max_name_table = 0;
  o.max_datatype_table = 0;
  o.version = 0;
  Cursor c(data);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    switch (field) {
      case kOptStreamName: o.stream_name = c.str("stream name"); break;
      case kOptPhysicalType:
        o.physical_type = static_cast<PhysicalType>(c.varint());
        break;
      case kOptGeneralized: o.generalized = c.varint() != 0; break;
      case kOptRdfStar: o.rdf_star = c.varint() != 0; break;
      case kOptMaxNameTable:
        o.max_name_table = static_cast<std::uint32_t>(c.varint());
        break;
      case kOptMaxPrefixTable:
        o.max_prefix_table = static_cast<std::uint32_t>(c.varint());
        break;
      case kOptMaxDatatypeTable:
        o.max_datatype_table = static_cast<std::uint32_t>(c.varint());
        break;
      case kOptVersion: o.version = static_cast<std::uint32_t>(c.varint()); break;
      default: c.skip(wt);
    }
  }
  return o;
}

LookupEntry rd_entry(std::span<const std::uint8_t> data, LookupKind kind) {
  LookupEntry e;
  e.table = kind;
  Cursor c(data);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    switch (field) {
      case kEntryId: e.id = static_cast<std::uint32_t>(c.varint()); break;
      case kEntryValue: e.value = c.str("lookup entry value"); break;
      default: c.skip(wt);
    }
  }
  return e;
}

WireIri rd_iri(std::span<const std::uint8_t> data) {
  WireIri iri;
  Cursor c(data);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    switch (field) {
      case kIriPrefixId: iri.prefix_id = static_cast<std::uint32_t>(c.varint()); break;
      case kIriNameId: iri.name_id = static_cast<std::uint32_t>(c.varint()); break;
      default: c.skip(wt);
    }
  }
  return iri;
}

WireLiteral rd_literal(std::span<const std::uint8_t> data) {
  WireLiteral lit;
  Cursor c(data);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    switch (field) {
      case kLitLexical: lit.lexical = c.str("literal lexical form"); break;
      case kLitLangtag:
        lit.kind = WireLiteral::Kind::Lang;
        lit.langtag = c.str("language tag");
        lit.datatype_id = 0;
        break;
      case kLitDatatypeId:
        lit.kind = WireLiteral::Kind::Datatype;
        lit.datatype_id = static_cast<std::uint32_t>(c.varint());
        lit.langtag.clear();
        break;
      default: c.skip(wt);
    }
  }
  return lit;
}

struct TermSlots {
  std::optional<WireTerm> subject, predicate, object, graph;
};

void rd_statement_fields(std::span<const std::uint8_t> data, bool with_graph,
                         TermSlots& slots, int depth);

WireTerm rd_term_member(Cursor& c, std::uint32_t member, std::uint32_t wt, int depth) {
  if (depth > kMaxNestingDepth) throw WireError("quoted triple nesting too deep");
  if (wt != kWtLen) throw WireError("term field must be length-delimited");
  switch (member) {
    case kTermIri: return rd_iri(c.len_delimited());
    case kTermBNode: return WireBNode{c.str("blank node label")};
    case kTermLiteral: return rd_literal(c.len_delimited());
    case kTermQuoted: {
      TermSlots slots;
      rd_statement_fields(c.len_delimited(), false, slots, depth + 1);
      if (!slots.subject || !slots.predicate || !slots.object)
        throw WireError("quoted triple with missing term");
      return make_quoted(std::move(*slots.subject), std::move(*slots.predicate),
                         std::move(*slots.object));
    }
    case kTermRepeat: c.len_delimited(); return WireRepeat{};
    default: c.len_delimited(); return WireDefaultGraph{};
  }
}

void rd_statement_fields(std::span<const std::uint8_t> data, bool with_graph,
                         TermSlots& slots, int depth) {
  Cursor c(data);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    if (field >= kSubjectBase + 1 && field <= kSubjectBase + 5) {
      slots.subject = rd_term_member(c, field - kSubjectBase, wt, depth);
    } else if (field >= kPredicateBase + 1 && field <= kPredicateBase + 5) {
      slots.predicate = rd_term_member(c, field - kPredicateBase, wt, depth);
    } else if (field >= kObjectBase + 1 && field <= kObjectBase + 5) {
      slots.object = rd_term_member(c, field - kObjectBase, wt, depth);
    } else if (with_graph && field >= kGraphBase + 1 && field <= kGraphBase + 6) {
      slots.graph = rd_term_member(c, field - kGraphBase, wt, depth);
    } else {
      c.skip(wt);
    }
  }
}

StreamRow rd_row(std::span<const std::uint8_t> data) {
  std::optional<StreamRow> row;
  Cursor c(data);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    switch (field) {
      case kRowOptions:
        if (wt != kWtLen) throw WireError("options row must be length-delimited");
        row = rd_options(c.len_delimited());
        break;
      case kRowTriple: {
        if (wt != kWtLen) throw WireError("triple row must be length-delimited");
        TermSlots slots;
        rd_statement_fields(c.len_delimited(), false, slots, 0);
        if (!slots.subject) throw WireError("triple row with subject not set");
        if (!slots.predicate) throw WireError("triple row with predicate not set");
        if (!slots.object) throw WireError("triple row with object not set");
        row = RowTriple{std::move(*slots.subject), std::move(*slots.predicate),
                        std::move(*slots.object)};
        break;
      }
      case kRowQuad: {
        if (wt != kWtLen) throw WireError("quad row must be length-delimited");
        TermSlots slots;
        rd_statement_fields(c.len_delimited(), true, slots, 0);
        if (!slots.subject) throw WireError("quad row with subject not set");
        if (!slots.predicate) throw WireError("quad row with predicate not set");
        if (!slots.object) throw WireError("quad row with object not set");
        if (!slots.graph) throw WireError("quad row with graph not set");
        row = RowQuad{std::move(*slots.subject), std::move(*slots.predicate),
                      std::move(*slots.object), std::move(*slots.graph)};
        break;
      }
      case kRowPrefixEntry:
      case kRowNameEntry:
      case kRowDatatypeEntry: {
        if (wt != kWtLen) throw WireError("lookup entry must be length-delimited");
        LookupKind kind = field == kRowPrefixEntry ? LookupKind::Prefix
                          : field == kRowNameEntry ? LookupKind::Name
                                                   : LookupKind::Datatype;
        row = rd_entry(c.len_delimited(), kind);
        break;
      }
      default:
        c.skip(wt);
    }
  }
  if (!row) throw WireError("stream row with no variant set");
  return std::move(*row);
}

}  // namespace

Bytes encode_frame(const StreamFrame& frame) {
  std::size_t total = 0;
  for (const auto& row : frame.rows) total += sz_len_field(1, sz_row(row));
  Bytes out;
  out.reserve(total);
  for (const auto& row : frame.rows) {
    put_tag(out, 1, kWtLen);
    put_varint(out, sz_row(row));
    switch (row.index()) {
      case 0: {
        const auto& o = std::get<StreamOptions>(row);
        put_tag(out, kRowOptions, kWtLen);
        put_varint(out, sz_options(o));
        wr_options(out, o);
        break;
      }
      case 1: {
        const auto& e = std::get<LookupEntry>(row);
        std::uint32_t field = e.table == LookupKind::Prefix  ? kRowPrefixEntry
                              : e.table == LookupKind::Name ? kRowNameEntry
                                                            : kRowDatatypeEntry;
        put_tag(out, field, kWtLen);
        put_varint(out, sz_entry(e));
        wr_entry(out, e);
        break;
      }
      case 2: {
        const auto& t = std::get<RowTriple>(row);
        put_tag(out, kRowTriple, kWtLen);
        put_varint(out, sz_triple_terms(t.subject, t.predicate, t.object));
        wr_triple_terms(out, t.subject, t.predicate, t.object);
        break;
      }
      default: {
        const auto& q = std::get<RowQuad>(row);
        put_tag(out, kRowQuad, kWtLen);
        put_varint(out, sz_triple_terms(q.subject, q.predicate, q.object) +
                            sz_term(q.graph, kGraphBase));
        wr_triple_terms(out, q.subject, q.predicate, q.object);
        wr_term(out, q.graph, kGraphBase);
        break;
      }
    }
  }
  return out;
}

StreamFrame decode_frame(std::span<const std::uint8_t> bytes) {
  StreamFrame frame;
  Cursor c(bytes);
  while (!c.done()) {
    std::uint64_t key = c.varint();
    auto field = static_cast<std::uint32_t>(key >> 3);
    auto wt = static_cast<std::uint32_t>(key & 7);
    if (field == 1) {
      if (wt != kWtLen) throw WireError("frame rows must be length-delimited");
      frame.rows.push_back(rd_row(c.len_delimited()));
    } else {
      c.skip(wt);
    }
  }
  return frame;
}

}  // namespace jelly::wire
