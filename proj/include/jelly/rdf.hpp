#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "jelly/error.hpp"

namespace jelly {

enum class TermKind : std::uint8_t { Iri, BlankNode, Literal, QuotedTriple };

/// Kind of a literal: plain, language-tagged, or datatyped. Simple literals
/// are distinct from ones explicitly typed as xsd:string; the wire format
/// preserves that distinction.
class LiteralKind {
public:
  enum class Tag : std::uint8_t { Simple, Lang, Typed };

  static LiteralKind simple() { return LiteralKind(Tag::Simple, {}); }
  static LiteralKind lang(std::string tag);
  static LiteralKind typed(std::string datatype_iri);

  Tag tag() const { return tag_; }
  bool is_simple() const { return tag_ == Tag::Simple; }
  bool is_lang() const { return tag_ == Tag::Lang; }
  bool is_typed() const { return tag_ == Tag::Typed; }

  /// Language tag; valid only when is_lang().
  const std::string& lang_tag() const { return text_; }
  /// Datatype IRI; valid only when is_typed().
  const std::string& datatype() const { return text_; }

  friend bool operator==(const LiteralKind&, const LiteralKind&) = default;

private:
  LiteralKind(Tag tag, std::string text) : tag_(tag), text_(std::move(text)) {}

  Tag tag_;
  std::string text_;
};

class Term;

/// Subject/predicate/object of a quoted (RDF-star) triple. Held behind a
/// shared pointer inside Term, so terms stay cheap to copy.
struct QuotedTripleData;

/// An RDF term: IRI, blank node, literal, or quoted triple. Immutable after
/// construction; copies share quoted-triple payloads. Safe to share across
/// threads.
class Term {
public:
  /// IRI; the value must be non-empty. No normalization is applied.
  static Term iri(std::string value);
  /// Blank node; the label must be non-empty and contain no whitespace.
  static Term bnode(std::string label);
  /// Literal with the exact lexical form given; nothing is canonicalized.
  static Term literal(std::string lexical, LiteralKind kind = LiteralKind::simple());
  /// RDF-star quoted triple.
  static Term quoted_triple(Term subject, Term predicate, Term object);

  TermKind kind() const { return static_cast<TermKind>(rep_.index()); }
  bool is_iri() const { return kind() == TermKind::Iri; }
  bool is_bnode() const { return kind() == TermKind::BlankNode; }
  bool is_literal() const { return kind() == TermKind::Literal; }
  bool is_quoted_triple() const { return kind() == TermKind::QuotedTriple; }

  const std::string& iri_value() const { return std::get<IriRep>(rep_).value; }
  const std::string& bnode_label() const { return std::get<BNodeRep>(rep_).label; }
  const std::string& lexical() const { return std::get<LiteralRep>(rep_).lexical; }
  const LiteralKind& literal_kind() const { return std::get<LiteralRep>(rep_).kind; }
  const QuotedTripleData& quoted() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
  struct IriRep {
    std::string value;
    friend bool operator==(const IriRep&, const IriRep&) = default;
  };
  struct BNodeRep {
    std::string label;
    friend bool operator==(const BNodeRep&, const BNodeRep&) = default;
  };
  struct LiteralRep {
    std::string lexical;
    LiteralKind kind;
    friend bool operator==(const LiteralRep&, const LiteralRep&) = default;
  };
  using Rep = std::variant<IriRep, BNodeRep, LiteralRep,
                           std::shared_ptr<const QuotedTripleData>>;

  explicit Term(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

struct QuotedTripleData {
  Term subject;
  Term predicate;
  Term object;
};

/// Graph component of a quad: the default graph or a named graph.
class GraphName {
public:
  static GraphName default_graph() { return GraphName(); }
  static GraphName named(Term term) { return GraphName(std::move(term)); }

  bool is_default() const { return !term_.has_value(); }
  /// Valid only when !is_default().
  const Term& term() const { return *term_; }

  friend bool operator==(const GraphName&, const GraphName&);
  friend bool operator!=(const GraphName& a, const GraphName& b) { return !(a == b); }

private:
  GraphName() = default;
  explicit GraphName(Term term) : term_(std::move(term)) {}

  std::optional<Term> term_;
};

/// A triple or a quad. A quad in the default graph is a distinct value from
/// the corresponding triple.
class Statement {
public:
  static Statement triple(Term subject, Term predicate, Term object) {
    return Statement(std::move(subject), std::move(predicate), std::move(object),
                     std::nullopt);
  }
  static Statement quad(Term subject, Term predicate, Term object, GraphName graph) {
    return Statement(std::move(subject), std::move(predicate), std::move(object),
                     std::move(graph));
  }

  bool is_quad() const { return graph_.has_value(); }
  const Term& subject() const { return subject_; }
  const Term& predicate() const { return predicate_; }
  const Term& object() const { return object_; }
  /// Valid only when is_quad().
  const GraphName& graph() const { return *graph_; }

  friend bool operator==(const Statement&, const Statement&);
  friend bool operator!=(const Statement& a, const Statement& b) { return !(a == b); }

private:
  Statement(Term s, Term p, Term o, std::optional<GraphName> g)
      : subject_(std::move(s)),
        predicate_(std::move(p)),
        object_(std::move(o)),
        graph_(std::move(g)) {}

  Term subject_;
  Term predicate_;
  Term object_;
  std::optional<GraphName> graph_;
};

/// Structural equality: same variant, pairwise equal terms. Blank nodes are
/// equal iff their labels are; no lexical normalization is applied anywhere.
inline bool statement_equal(const Statement& a, const Statement& b) { return a == b; }

/// True if the term may stand as a subject under strict (non-generalized)
/// RDF rules: IRI, blank node, or quoted triple.
bool valid_strict_subject(const Term& t);
/// True if the term may stand as a predicate under strict rules: IRI only.
bool valid_strict_predicate(const Term& t);
/// True if the term may name a graph under strict rules: IRI or blank node.
bool valid_strict_graph(const Term& t);

}  // namespace jelly
