#include "jelly/rdf.hpp"

#include <cctype>

namespace jelly {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }

// [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*, the LANGTAG production.
bool valid_lang_tag(std::string_view tag) {
  std::size_t i = 0;
  while (i < tag.size() && is_alpha(tag[i])) ++i;
  if (i == 0) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    std::size_t start = i;
    while (i < tag.size() && is_alnum(tag[i])) ++i;
    if (i == start) return false;
  }
  return true;
}

bool has_whitespace(std::string_view s) {
  for (unsigned char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v')
      return true;
  }
  return false;
}

}  // namespace

LiteralKind LiteralKind::lang(std::string tag) {
  if (!valid_lang_tag(tag))
    throw std::invalid_argument("invalid language tag: '" + tag + "'");
  return LiteralKind(Tag::Lang, std::move(tag));
}

LiteralKind LiteralKind::typed(std::string datatype_iri) {
  if (datatype_iri.empty())
    throw std::invalid_argument("datatype IRI must be non-empty");
  return LiteralKind(Tag::Typed, std::move(datatype_iri));
}

Term Term::iri(std::string value) {
  if (value.empty()) throw std::invalid_argument("IRI must be non-empty");
  return Term(Rep(IriRep{std::move(value)}));
}

Term Term::bnode(std::string label) {
  if (label.empty()) throw std::invalid_argument("blank node label must be non-empty");
  if (has_whitespace(label))
    throw std::invalid_argument("blank node label must not contain whitespace: '" +
                                label + "'");
  return Term(Rep(BNodeRep{std::move(label)}));
}

Term Term::literal(std::string lexical, LiteralKind kind) {
  return Term(Rep(LiteralRep{std::move(lexical), std::move(kind)}));
}

Term Term::quoted_triple(Term subject, Term predicate, Term object) {
  auto data = std::make_shared<const QuotedTripleData>(QuotedTripleData{
      std::move(subject), std::move(predicate), std::move(object)});
  return Term(Rep(std::move(data)));
}

const QuotedTripleData& Term::quoted() const {
  return *std::get<std::shared_ptr<const QuotedTripleData>>(rep_);
}

bool operator==(const Term& a, const Term& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.kind() == TermKind::QuotedTriple) {
    const auto& qa = a.quoted();
    const auto& qb = b.quoted();
    return qa.subject == qb.subject && qa.predicate == qb.predicate &&
           qa.object == qb.object;
  }
  return a.rep_ == b.rep_;
}

bool operator==(const GraphName& a, const GraphName& b) {
  if (a.is_default() != b.is_default()) return false;
  return a.is_default() || *a.term_ == *b.term_;
}

bool operator==(const Statement& a, const Statement& b) {
  if (a.is_quad() != b.is_quad()) return false;
  if (a.subject_ != b.subject_ || a.predicate_ != b.predicate_ ||
      a.object_ != b.object_)
    return false;
  return !a.is_quad() || *a.graph_ == *b.graph_;
}

bool valid_strict_subject(const Term& t) { return !t.is_literal(); }

bool valid_strict_predicate(const Term& t) { return t.is_iri(); }

bool valid_strict_graph(const Term& t) { return t.is_iri() || t.is_bnode(); }

}  // namespace jelly
