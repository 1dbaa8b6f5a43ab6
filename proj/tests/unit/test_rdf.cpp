#include <doctest.h>

#include "jelly/rdf.hpp"
#include "testutil.hpp"

using namespace jelly;

TEST_CASE("literal construction preserves the lexical form exactly") {
  Term simple = Term::literal("abc");
  CHECK(simple.lexical() == "abc");
  CHECK(simple.literal_kind().is_simple());

  Term tagged = Term::literal("abc", LiteralKind::lang("en"));
  CHECK(tagged.lexical() == "abc");
  CHECK(tagged.literal_kind().lang_tag() == "en");

  // No canonicalization: "5" stays "5".
  Term typed = Term::literal(
      "5", LiteralKind::typed("http://www.w3.org/2001/XMLSchema#integer"));
  CHECK(typed.lexical() == "5");
  CHECK(typed.literal_kind().datatype() == "http://www.w3.org/2001/XMLSchema#integer");
}

TEST_CASE("term invariants are enforced at construction") {
  CHECK_THROWS_AS(Term::iri(""), std::invalid_argument);
  CHECK_THROWS_AS(Term::bnode(""), std::invalid_argument);
  CHECK_THROWS_AS(Term::bnode("a b"), std::invalid_argument);
  CHECK_THROWS_AS(LiteralKind::lang(""), std::invalid_argument);
  CHECK_THROWS_AS(LiteralKind::lang("en us"), std::invalid_argument);
  CHECK_THROWS_AS(LiteralKind::lang("-en"), std::invalid_argument);
  CHECK_THROWS_AS(LiteralKind::typed(""), std::invalid_argument);
  CHECK_NOTHROW(LiteralKind::lang("en-US-x-a1"));
}

TEST_CASE("statement equality is structural") {
  auto s = Term::iri("http://e/s");
  auto p = Term::iri("http://e/p");

  CHECK(Statement::triple(s, p, Term::literal("x")) ==
        Statement::triple(s, p, Term::literal("x")));
  // "5" vs "05" differ: no numeric normalization.
  CHECK(Statement::triple(s, p, Term::literal("5")) !=
        Statement::triple(s, p, Term::literal("05")));
  // Default vs named graph is a real difference.
  CHECK(Statement::quad(s, p, s, GraphName::default_graph()) !=
        Statement::quad(s, p, s, GraphName::named(Term::iri("http://g"))));
  // Quad in the default graph is not the triple.
  CHECK(Statement::quad(s, p, s, GraphName::default_graph()) !=
        Statement::triple(s, p, s));
  // Simple vs explicitly typed xsd:string stay distinct.
  CHECK(Statement::triple(s, p, Term::literal("x")) !=
        Statement::triple(s, p,
                          Term::literal("x", LiteralKind::typed(
                                                 "http://www.w3.org/2001/"
                                                 "XMLSchema#string"))));
}

TEST_CASE("quoted triple equality recurses") {
  auto q1 = Term::quoted_triple(Term::iri("http://e/s"), Term::iri("http://e/p"),
                                Term::literal("v"));
  auto q2 = Term::quoted_triple(Term::iri("http://e/s"), Term::iri("http://e/p"),
                                Term::literal("v"));
  auto q3 = Term::quoted_triple(Term::iri("http://e/s"), Term::iri("http://e/p"),
                                Term::literal("w"));
  CHECK(q1 == q2);
  CHECK(q1 != q3);
}

TEST_CASE("statement equality is an equivalence relation on random data") {
  testutil::StatementGenConfig config;
  config.quads = true;
  config.rdf_star = true;
  testutil::StatementGen gen(config, 7);
  auto statements = gen.take(300);
  for (std::size_t i = 0; i < statements.size(); ++i) {
    CHECK(statements[i] == statements[i]);  // reflexive
    for (std::size_t j = i + 1; j < std::min(statements.size(), i + 8); ++j) {
      bool ij = statements[i] == statements[j];
      bool ji = statements[j] == statements[i];
      CHECK(ij == ji);  // symmetric
      if (ij) {
        for (std::size_t k = j + 1; k < std::min(statements.size(), j + 8); ++k) {
          if (statements[j] == statements[k]) CHECK(statements[i] == statements[k]);
        }
      }
    }
  }
}
