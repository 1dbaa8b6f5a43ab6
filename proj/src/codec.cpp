#include "jelly/codec.hpp"

namespace jelly {

using wire::LookupEntry;
using wire::LookupKind;
using wire::RowQuad;
using wire::RowTriple;
using wire::StreamOptions;
using wire::StreamRow;
using wire::WireBNode;
using wire::WireDefaultGraph;
using wire::WireIri;
using wire::WireLiteral;
using wire::WireQuoted;
using wire::WireRepeat;
using wire::WireTerm;

std::pair<std::string_view, std::string_view> split_iri(std::string_view iri,
                                                        bool prefix_enabled) {
  if (!prefix_enabled) return {std::string_view{}, iri};
  if (auto hash = iri.rfind('#'); hash != std::string_view::npos)
    return {iri.substr(0, hash + 1), iri.substr(hash + 1)};

  std::size_t scheme_end = 0;
  if (auto sep = iri.find("://"); sep != std::string_view::npos)
    scheme_end = sep + 3;
  else if (auto colon = iri.find(':'); colon != std::string_view::npos)
    scheme_end = colon + 1;

  if (auto slash = iri.rfind('/');
      slash != std::string_view::npos && slash >= scheme_end)
    return {iri.substr(0, slash + 1), iri.substr(slash + 1)};
  return {std::string_view{}, iri};
}

// --- LruLookup ---

LruLookup::LruLookup(std::uint32_t capacity) : capacity_(capacity) {
  values_.resize(capacity);
  prev_.assign(capacity, kNone);
  next_.assign(capacity, kNone);
  if (capacity > 0) index_.reserve(capacity);
}

void LruLookup::unlink(std::uint32_t slot) {
  std::uint32_t p = prev_[slot];
  std::uint32_t n = next_[slot];
  if (p != kNone) next_[p] = n; else head_ = n;
  if (n != kNone) prev_[n] = p; else tail_ = p;
}

void LruLookup::link_back(std::uint32_t slot) {
  prev_[slot] = tail_;
  next_[slot] = kNone;
  if (tail_ != kNone) next_[tail_] = slot; else head_ = slot;
  tail_ = slot;
}

LruResult LruLookup::get_or_insert(std::string_view value) {
  if (capacity_ == 0) throw CodecError("lookup table is disabled (capacity 0)");
  if (auto it = index_.find(value); it != index_.end()) {
    std::uint32_t slot = it->second;
    if (slot != tail_) {
      unlink(slot);
      link_back(slot);
    }
    return {slot + 1, LruEvent::Hit};
  }
  if (used_ < capacity_) {
    std::uint32_t slot = used_++;
    values_[slot].assign(value);
    index_.emplace(values_[slot], slot);
    link_back(slot);
    return {slot + 1, LruEvent::New};
  }
  std::uint32_t slot = head_;  // least recently used
  index_.erase(values_[slot]);
  unlink(slot);
  values_[slot].assign(value);
  index_.emplace(values_[slot], slot);
  link_back(slot);
  return {slot + 1, LruEvent::Evicted};
}

std::vector<std::pair<std::string, std::uint32_t>> LruLookup::entries_by_recency()
    const {
  std::vector<std::pair<std::string, std::uint32_t>> out;
  out.reserve(index_.size());
  for (std::uint32_t slot = head_; slot != kNone; slot = next_[slot])
    out.emplace_back(values_[slot], slot + 1);
  return out;
}

// --- Encoder ---

namespace {

constexpr int kMaxQuotedDepth = 32;

[[noreturn]] void fail(const std::string& msg) { throw CodecError(msg); }

}  // namespace

Encoder::Encoder(StreamOptions options)
    : options_(std::move(options)),
      prefixes_(options_.max_prefix_table),
      names_(options_.max_name_table),
      datatypes_(options_.max_datatype_table) {
  if (auto err = wire::validate_options(options_)) fail("invalid options: " + *err);
}

void Encoder::check_term(const Term& t, int depth) const {
  if (depth > kMaxQuotedDepth) fail("quoted triple nesting too deep");
  switch (t.kind()) {
    case TermKind::Literal:
      if (t.literal_kind().is_typed() && !options_.max_datatype_table)
        fail("typed literal on a stream with the datatype table disabled");
      return;
    case TermKind::QuotedTriple: {
      if (!options_.rdf_star) fail("quoted triple on a stream without RDF-star");
      const auto& q = t.quoted();
      if (!options_.generalized) {
        if (!valid_strict_subject(q.subject))
          fail("literal subject in quoted triple requires generalized mode");
        if (!valid_strict_predicate(q.predicate))
          fail("non-IRI predicate in quoted triple requires generalized mode");
      }
      check_term(q.subject, depth + 1);
      check_term(q.predicate, depth + 1);
      check_term(q.object, depth + 1);
      return;
    }
    default:
      return;
  }
}

void Encoder::check_statement(const Statement& s) const {
  bool quads = options_.physical_type == wire::PhysicalType::Quads;
  if (s.is_quad() != quads)
    fail(quads ? "triple on a QUADS stream" : "quad on a TRIPLES stream");
  if (!options_.generalized) {
    if (!valid_strict_subject(s.subject()))
      fail("literal subject requires generalized mode");
    if (!valid_strict_predicate(s.predicate()))
      fail("non-IRI predicate requires generalized mode");
    if (s.is_quad() && !s.graph().is_default() && !valid_strict_graph(s.graph().term()))
      fail("graph name must be an IRI or blank node unless generalized");
  }
  check_term(s.subject(), 0);
  check_term(s.predicate(), 0);
  check_term(s.object(), 0);
  if (s.is_quad() && !s.graph().is_default()) check_term(s.graph().term(), 0);
}

WireTerm Encoder::encode_term(const Term& t, std::vector<StreamRow>& out, int depth) {
  switch (t.kind()) {
    case TermKind::Iri: {
      auto [prefix, name] = split_iri(t.iri_value(), prefixes_.enabled());
      WireIri iri;
      if (!prefix.empty()) {
        auto [id, event] = prefixes_.get_or_insert(prefix);
        if (event != LruEvent::Hit)
          out.push_back(LookupEntry{LookupKind::Prefix, id, std::string(prefix)});
        iri.prefix_id = id;
      }
      if (!name.empty()) {
        auto [id, event] = names_.get_or_insert(name);
        if (event != LruEvent::Hit)
          out.push_back(LookupEntry{LookupKind::Name, id, std::string(name)});
        iri.name_id = id;
      }
      return iri;
    }
    case TermKind::BlankNode:
      return WireBNode{t.bnode_label()};
    case TermKind::Literal: {
      const LiteralKind& k = t.literal_kind();
      switch (k.tag()) {
        case LiteralKind::Tag::Simple:
          return WireLiteral::simple(t.lexical());
        case LiteralKind::Tag::Lang:
          return WireLiteral::lang(t.lexical(), k.lang_tag());
        case LiteralKind::Tag::Typed: {
          auto [id, event] = datatypes_.get_or_insert(k.datatype());
          if (event != LruEvent::Hit)
            out.push_back(LookupEntry{LookupKind::Datatype, id, k.datatype()});
          return WireLiteral::datatype(t.lexical(), id);
        }
      }
      fail("unreachable literal kind");
    }
    case TermKind::QuotedTriple: {
      const auto& q = t.quoted();
      auto s = encode_term(q.subject, out, depth + 1);
      auto p = encode_term(q.predicate, out, depth + 1);
      auto o = encode_term(q.object, out, depth + 1);
      return wire::make_quoted(std::move(s), std::move(p), std::move(o));
    }
  }
  fail("unreachable term kind");
}

std::vector<StreamRow> Encoder::encode(const Statement& s, bool use_repeat) {
  std::vector<StreamRow> out;
  encode_into(s, use_repeat, out);
  return out;
}

void Encoder::encode_into(const Statement& s, bool use_repeat,
                          std::vector<StreamRow>& out) {
  check_statement(s);
  if (!options_emitted_) {
    out.push_back(options_row());
    options_emitted_ = true;
  }

  auto position = [&](const Term& t, std::optional<Term>& reg) -> WireTerm {
    if (use_repeat && reg && *reg == t) return WireRepeat{};
    WireTerm wt = encode_term(t, out, 0);
    reg = t;
    return wt;
  };

  WireTerm ws = position(s.subject(), last_subject_);
  WireTerm wp = position(s.predicate(), last_predicate_);
  WireTerm wo = position(s.object(), last_object_);

  if (!s.is_quad()) {
    out.push_back(RowTriple{std::move(ws), std::move(wp), std::move(wo)});
    return;
  }

  WireTerm wg;
  const GraphName& g = s.graph();
  if (use_repeat && last_graph_ && *last_graph_ == g) {
    wg = WireRepeat{};
  } else {
    wg = g.is_default() ? WireTerm(WireDefaultGraph{})
                        : encode_term(g.term(), out, 0);
    last_graph_ = g;
  }
  out.push_back(RowQuad{std::move(ws), std::move(wp), std::move(wo), std::move(wg)});
}

// --- Decoder ---

void Decoder::Table::set(std::uint32_t id, std::string value, const char* what) {
  if (id == 0) fail(std::string(what) + " entry with id 0");
  if (id > max_size_)
    fail(std::string(what) + " entry id " + std::to_string(id) +
         " exceeds the declared maximum of " + std::to_string(max_size_));
  if (id > values_.size()) {
    values_.resize(id);
    assigned_.resize(id, false);
  }
  values_[id - 1] = std::move(value);
  assigned_[id - 1] = true;
}

const std::string& Decoder::Table::get(std::uint32_t id, const char* what) const {
  if (id == 0 || id > values_.size() || !assigned_[id - 1])
    fail(std::string("unknown ") + what + " id " + std::to_string(id));
  return values_[id - 1];
}

void Decoder::apply_entry(const LookupEntry& e) {
  switch (e.table) {
    case LookupKind::Prefix: prefixes_.set(e.id, e.value, "prefix"); return;
    case LookupKind::Name: names_.set(e.id, e.value, "name"); return;
    case LookupKind::Datatype: datatypes_.set(e.id, e.value, "datatype"); return;
  }
}

std::string Decoder::resolve_iri(std::uint32_t prefix_id, std::uint32_t name_id) const {
  if (prefix_id == 0 && name_id == 0)
    fail("IRI with both prefix and name ids unset");
  std::string out;
  if (prefix_id != 0) out = prefixes_.get(prefix_id, "prefix");
  if (name_id != 0) out += names_.get(name_id, "name");
  return out;
}

namespace {
// Positions for decode_term diagnostics and repeat handling.
constexpr int kPosSubject = 0;
constexpr int kPosPredicate = 1;
constexpr int kPosObject = 2;
constexpr int kPosGraph = 3;
constexpr int kPosQuoted = 4;
}  // namespace

Term Decoder::decode_term(const WireTerm& t, int position, int depth) const {
  if (depth > kMaxQuotedDepth) fail("quoted triple nesting too deep");
  switch (t.index()) {
    case 0: {  // WireIri
      const auto& iri = std::get<WireIri>(t);
      return Term::iri(resolve_iri(iri.prefix_id, iri.name_id));
    }
    case 1: {  // WireBNode
      const auto& label = std::get<WireBNode>(t).label;
      try {
        return Term::bnode(label);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    case 2: {  // WireLiteral
      const auto& lit = std::get<WireLiteral>(t);
      switch (lit.kind) {
        case WireLiteral::Kind::None:
          return Term::literal(lit.lexical);
        case WireLiteral::Kind::Lang:
          try {
            return Term::literal(lit.lexical, LiteralKind::lang(lit.langtag));
          } catch (const std::invalid_argument& e) {
            fail(e.what());
          }
        case WireLiteral::Kind::Datatype:
          return Term::literal(lit.lexical,
                               LiteralKind::typed(datatypes_.get(lit.datatype_id,
                                                                 "datatype")));
      }
      fail("unreachable literal kind");
    }
    case 3: {  // WireQuoted
      const auto& q = *std::get<WireQuoted>(t).terms;
      return Term::quoted_triple(decode_term(q.subject, kPosQuoted, depth + 1),
                                 decode_term(q.predicate, kPosQuoted, depth + 1),
                                 decode_term(q.object, kPosQuoted, depth + 1));
    }
    case 4: {  // WireRepeat
      switch (position) {
        case kPosSubject:
          if (!last_subject_) fail("repeat before any subject term");
          return *last_subject_;
        case kPosPredicate:
          if (!last_predicate_) fail("repeat before any predicate term");
          return *last_predicate_;
        case kPosObject:
          if (!last_object_) fail("repeat before any object term");
          return *last_object_;
        default:
          fail("repeat term inside a quoted triple");
      }
    }
    default:
      fail("default graph outside the graph position");
  }
}

std::vector<Statement> Decoder::decode(std::span<const StreamRow> rows) {
  std::vector<Statement> out;
  decode_into(rows, out);
  return out;
}

void Decoder::decode_into(std::span<const StreamRow> rows,
                          std::vector<Statement>& out) {
  for (const StreamRow& row : rows) {
    if (!options_ && !std::holds_alternative<StreamOptions>(row))
      fail("first stream row must be the options row");
    switch (row.index()) {
      case 0: {  // StreamOptions
        if (options_) fail("options row appearing twice");
        const auto& o = std::get<StreamOptions>(row);
        if (auto err = wire::validate_options(o)) fail("invalid options: " + *err);
        options_ = o;
        prefixes_.configure(o.max_prefix_table);
        names_.configure(o.max_name_table);
        datatypes_.configure(o.max_datatype_table);
        break;
      }
      case 1:  // LookupEntry
        apply_entry(std::get<LookupEntry>(row));
        break;
      case 2: {  // RowTriple
        if (options_->physical_type != wire::PhysicalType::Triples)
          fail("triple row on a QUADS stream");
        const auto& t = std::get<RowTriple>(row);
        Term s = decode_term(t.subject, kPosSubject, 0);
        Term p = decode_term(t.predicate, kPosPredicate, 0);
        Term o = decode_term(t.object, kPosObject, 0);
        last_subject_ = s;
        last_predicate_ = p;
        last_object_ = o;
        out.push_back(Statement::triple(std::move(s), std::move(p), std::move(o)));
        break;
      }
      default: {  // RowQuad
        if (options_->physical_type != wire::PhysicalType::Quads)
          fail("quad row on a TRIPLES stream");
        const auto& q = std::get<RowQuad>(row);
        Term s = decode_term(q.subject, kPosSubject, 0);
        Term p = decode_term(q.predicate, kPosPredicate, 0);
        Term o = decode_term(q.object, kPosObject, 0);
        GraphName g = GraphName::default_graph();
        if (std::holds_alternative<WireRepeat>(q.graph)) {
          if (!last_graph_) fail("repeat before any graph term");
          g = *last_graph_;
        } else if (std::holds_alternative<WireDefaultGraph>(q.graph)) {
          last_graph_ = g;
        } else {
          g = GraphName::named(decode_term(q.graph, kPosGraph, 0));
          last_graph_ = g;
        }
        last_subject_ = s;
        last_predicate_ = p;
        last_object_ = o;
        out.push_back(Statement::quad(std::move(s), std::move(p), std::move(o),
                                      std::move(g)));
        break;
      }
    }
  }
}

}  // namespace jelly
