#include <doctest.h>

#include <functional>

#include "jelly/bench.hpp"
#include "jelly/codec.hpp"
#include "testutil.hpp"

using namespace jelly;
using wire::LookupEntry;
using wire::LookupKind;
using wire::RowTriple;
using wire::StreamOptions;
using wire::StreamRow;
using wire::WireIri;
using wire::WireLiteral;
using wire::WireRepeat;

namespace {

StreamOptions default_options() { return StreamOptions{}; }

StreamOptions options_with_star() {
  StreamOptions opts;
  opts.rdf_star = true;
  return opts;
}

Statement simple_triple() {
  return Statement::triple(Term::iri("http://ex/s"), Term::iri("http://ex/p"),
                           Term::literal("a"));
}

}  // namespace

TEST_CASE("split_iri follows the last-hash-else-last-slash rule") {
  auto check = [](std::string_view iri, std::string_view prefix,
                  std::string_view name) {
    auto [p, n] = split_iri(iri, true);
    CHECK(p == prefix);
    CHECK(n == name);
    CHECK(std::string(p) + std::string(n) == iri);
  };
  check("http://ex.org/vocab#name", "http://ex.org/vocab#", "name");
  check("http://ex.org/a/b", "http://ex.org/a/", "b");
  check("urn:uuid:1234", "", "urn:uuid:1234");
  check("http://ex.org", "", "http://ex.org");  // no '/' past the authority
  check("http://ex.org/", "http://ex.org/", "");
  check("urn:a/b:x", "urn:a/", "b:x");

  auto [p, n] = split_iri("http://ex.org/a#b", false);
  CHECK(p.empty());
  CHECK(n == "http://ex.org/a#b");
}

TEST_CASE("split_iri concatenation is the identity on random IRIs") {
  testutil::StatementGenConfig config;
  testutil::StatementGen gen(config, 99);
  for (int i = 0; i < 500; ++i) {
    std::string iri = gen.iri_term().iri_value();
    for (bool enabled : {false, true}) {
      auto [p, n] = split_iri(iri, enabled);
      CHECK(std::string(p) + std::string(n) == iri);
    }
  }
}

TEST_CASE("first statement emits options, entries, then the statement row") {
  Encoder encoder(default_options());
  auto rows = encoder.encode(simple_triple());
  REQUIRE(rows.size() == 5);
  CHECK(std::holds_alternative<StreamOptions>(rows[0]));
  CHECK(std::get<LookupEntry>(rows[1]) ==
        LookupEntry{LookupKind::Prefix, 1, "http://ex/"});
  CHECK(std::get<LookupEntry>(rows[2]) == LookupEntry{LookupKind::Name, 1, "s"});
  CHECK(std::get<LookupEntry>(rows[3]) == LookupEntry{LookupKind::Name, 2, "p"});
  const auto& triple = std::get<RowTriple>(rows[4]);
  CHECK(std::get<WireIri>(triple.subject) == WireIri{1, 1});
  CHECK(std::get<WireIri>(triple.predicate) == WireIri{1, 2});
  CHECK(std::get<WireLiteral>(triple.object) == WireLiteral::simple("a"));
}

TEST_CASE("an immediately repeated statement collapses to three repeats") {
  Encoder encoder(default_options());
  encoder.encode(simple_triple());
  auto rows = encoder.encode(simple_triple());
  REQUIRE(rows.size() == 1);
  const auto& triple = std::get<RowTriple>(rows[0]);
  CHECK(std::holds_alternative<WireRepeat>(triple.subject));
  CHECK(std::holds_alternative<WireRepeat>(triple.predicate));
  CHECK(std::holds_alternative<WireRepeat>(triple.object));
}

TEST_CASE("use_repeat=false re-references ids without new entries") {
  Encoder encoder(default_options());
  encoder.encode(simple_triple(), false);
  auto rows = encoder.encode(simple_triple(), false);
  REQUIRE(rows.size() == 1);
  const auto& triple = std::get<RowTriple>(rows[0]);
  CHECK(std::get<WireIri>(triple.subject) == WireIri{1, 1});
  CHECK(std::get<WireIri>(triple.predicate) == WireIri{1, 2});
  CHECK(std::get<WireLiteral>(triple.object) == WireLiteral::simple("a"));
}

TEST_CASE("decoding the first-statement example inverts the encoding") {
  Encoder encoder(default_options());
  auto rows = encoder.encode(simple_triple());
  Decoder decoder;
  auto statements = decoder.decode(rows);
  REQUIRE(statements.size() == 1);
  CHECK(statement_equal(statements[0], simple_triple()));
}

TEST_CASE("decoder protocol violations") {
  StreamOptions opts = default_options();

  SUBCASE("repeat before any term") {
    Decoder decoder;
    std::vector<StreamRow> rows{opts,
                                RowTriple{WireRepeat{}, WireRepeat{}, WireRepeat{}}};
    CHECK_THROWS_WITH_AS(decoder.decode(rows),
                         doctest::Contains("repeat before any"), CodecError);
  }
  SUBCASE("unknown name id") {
    Decoder decoder;
    std::vector<StreamRow> rows{
        opts, RowTriple{WireIri{0, 7}, WireIri{0, 7}, WireIri{0, 7}}};
    CHECK_THROWS_WITH_AS(decoder.decode(rows), doctest::Contains("unknown name id"),
                         CodecError);
  }
  SUBCASE("first row must be options") {
    Decoder decoder;
    std::vector<StreamRow> rows{RowTriple{WireRepeat{}, WireRepeat{}, WireRepeat{}}};
    CHECK_THROWS_WITH_AS(decoder.decode(rows), doctest::Contains("first stream row"),
                         CodecError);
  }
  SUBCASE("options twice") {
    Decoder decoder;
    std::vector<StreamRow> rows{opts, opts};
    CHECK_THROWS_WITH_AS(decoder.decode(rows), doctest::Contains("twice"),
                         CodecError);
  }
  SUBCASE("entry id exceeding the declared maximum") {
    Decoder decoder;
    StreamOptions small = opts;
    small.max_name_table = 8;
    std::vector<StreamRow> rows{small, LookupEntry{LookupKind::Name, 9, "x"}};
    CHECK_THROWS_WITH_AS(decoder.decode(rows), doctest::Contains("maximum"),
                         CodecError);
  }
  SUBCASE("repeat inside a quoted triple") {
    Decoder decoder;
    StreamOptions star = opts;
    star.rdf_star = true;
    std::vector<StreamRow> rows{
        star, LookupEntry{LookupKind::Name, 1, "http://e/x"},
        RowTriple{wire::make_quoted(WireRepeat{}, WireIri{0, 1}, WireIri{0, 1}),
                  WireIri{0, 1}, WireIri{0, 1}}};
    CHECK_THROWS_WITH_AS(decoder.decode(rows),
                         doctest::Contains("inside a quoted triple"), CodecError);
  }
}

TEST_CASE("encoder option enforcement") {
  SUBCASE("typed literal with the datatype table disabled") {
    StreamOptions opts = default_options();
    opts.max_datatype_table = 0;
    Encoder encoder(opts);
    auto st = Statement::triple(Term::iri("http://e/s"), Term::iri("http://e/p"),
                                Term::literal("5", LiteralKind::typed("http://t")));
    CHECK_THROWS_AS(encoder.encode(st), CodecError);
  }
  SUBCASE("quoted triple without rdf_star") {
    Encoder encoder(default_options());
    auto st = Statement::triple(
        Term::quoted_triple(Term::iri("http://e/s"), Term::iri("http://e/p"),
                            Term::literal("x")),
        Term::iri("http://e/p"), Term::literal("y"));
    CHECK_THROWS_AS(encoder.encode(st), CodecError);
  }
  SUBCASE("generalized statement without the flag") {
    Encoder encoder(default_options());
    auto st = Statement::triple(Term::literal("s"), Term::iri("http://e/p"),
                                Term::literal("y"));
    CHECK_THROWS_AS(encoder.encode(st), CodecError);
  }
  SUBCASE("quad on a triples stream") {
    Encoder encoder(default_options());
    auto st = Statement::quad(Term::iri("http://e/s"), Term::iri("http://e/p"),
                              Term::literal("y"), GraphName::default_graph());
    CHECK_THROWS_AS(encoder.encode(st), CodecError);
  }
  SUBCASE("literal graph name needs generalized mode") {
    StreamOptions opts = default_options();
    opts.physical_type = wire::PhysicalType::Quads;
    Encoder strict(opts);
    auto st = Statement::quad(Term::iri("http://e/s"), Term::iri("http://e/p"),
                              Term::literal("y"),
                              GraphName::named(Term::literal("g")));
    CHECK_THROWS_AS(strict.encode(st), CodecError);
    opts.generalized = true;
    Encoder generalized(opts);
    CHECK_NOTHROW(generalized.encode(st));
  }
}

TEST_CASE("resolve_iri concatenates, id 0 contributing nothing") {
  Decoder decoder;
  StreamOptions opts = default_options();
  std::vector<StreamRow> rows{opts, LookupEntry{LookupKind::Prefix, 1, "http://ex/"},
                              LookupEntry{LookupKind::Name, 1, "http://a/b"},
                              LookupEntry{LookupKind::Name, 2, "s"}};
  decoder.decode(rows);
  CHECK(decoder.resolve_iri(0, 1) == "http://a/b");
  CHECK(decoder.resolve_iri(1, 2) == "http://ex/s");
  CHECK_THROWS_AS(decoder.resolve_iri(3, 0), CodecError);   // unassigned prefix
  CHECK_THROWS_AS(decoder.resolve_iri(0, 0), CodecError);   // empty result
}

TEST_CASE("entry-before-use holds across every encoder output") {
  testutil::StatementGenConfig config;
  config.rdf_star = true;
  testutil::StatementGen gen(config, 5);
  StreamOptions opts;
  opts.rdf_star = true;
  opts.max_prefix_table = 8;
  opts.max_name_table = 16;  // tiny tables force eviction churn
  opts.max_datatype_table = 2;
  Encoder encoder(opts);

  // Replay rows, tracking table contents; every referenced id must be live.
  std::vector<std::string> prefixes(opts.max_prefix_table + 1);
  std::vector<std::string> names(opts.max_name_table + 1);
  std::vector<std::string> datatypes(opts.max_datatype_table + 1);
  std::vector<bool> prefix_set(opts.max_prefix_table + 1, false);
  std::vector<bool> name_set(opts.max_name_table + 1, false);
  std::vector<bool> datatype_set(opts.max_datatype_table + 1, false);

  std::function<void(const wire::WireTerm&)> check_term =
      [&](const wire::WireTerm& t) {
        if (const auto* iri = std::get_if<WireIri>(&t)) {
          if (iri->prefix_id) REQUIRE(prefix_set[iri->prefix_id]);
          if (iri->name_id) REQUIRE(name_set[iri->name_id]);
        } else if (const auto* lit = std::get_if<WireLiteral>(&t)) {
          if (lit->kind == WireLiteral::Kind::Datatype)
            REQUIRE(datatype_set[lit->datatype_id]);
        } else if (const auto* q = std::get_if<wire::WireQuoted>(&t)) {
          check_term(q->terms->subject);
          check_term(q->terms->predicate);
          check_term(q->terms->object);
        }
      };

  for (int i = 0; i < 3000; ++i) {
    for (const StreamRow& row : encoder.encode(gen.next())) {
      if (const auto* e = std::get_if<LookupEntry>(&row)) {
        switch (e->table) {
          case LookupKind::Prefix:
            prefixes[e->id] = e->value;
            prefix_set[e->id] = true;
            break;
          case LookupKind::Name:
            names[e->id] = e->value;
            name_set[e->id] = true;
            break;
          case LookupKind::Datatype:
            datatypes[e->id] = e->value;
            datatype_set[e->id] = true;
            break;
        }
      } else if (const auto* t = std::get_if<RowTriple>(&row)) {
        check_term(t->subject);
        check_term(t->predicate);
        check_term(t->object);
      }
    }
  }
}

TEST_CASE("roundtrip under all four variants, triples and quads") {
  for (const auto& variant : bench::VariantConfig::all()) {
    for (bool quads : {false, true}) {
      testutil::StatementGenConfig config;
      config.quads = quads;
      config.rdf_star = true;
      testutil::StatementGen gen(config, 77 + quads);
      auto statements = gen.take(5000);

      auto frames = bench::encode_stream(statements, variant, 256);
      Decoder decoder;
      std::vector<Statement> decoded;
      for (const auto& frame : frames) decoder.decode_into(frame.rows, decoded);

      REQUIRE(decoded.size() == statements.size());
      for (std::size_t i = 0; i < decoded.size(); ++i)
        REQUIRE(statement_equal(decoded[i], statements[i]));
    }
  }
}

TEST_CASE("decoding is invariant under re-framing of the same rows") {
  testutil::StatementGenConfig config;
  config.rdf_star = true;
  testutil::StatementGen gen(config, 21);
  auto statements = gen.take(500);

  Encoder encoder(options_with_star());
  std::vector<StreamRow> all_rows;
  for (const auto& s : statements) encoder.encode_into(s, true, all_rows);

  for (std::size_t frame_size : {std::size_t(1), std::size_t(7), std::size_t(1000)}) {
    Decoder decoder;
    std::vector<Statement> decoded;
    for (std::size_t i = 0; i < all_rows.size(); i += frame_size) {
      std::span<const StreamRow> chunk(
          all_rows.data() + i, std::min(frame_size, all_rows.size() - i));
      decoder.decode_into(chunk, decoded);
    }
    REQUIRE(decoded.size() == statements.size());
    for (std::size_t i = 0; i < decoded.size(); ++i)
      REQUIRE(statement_equal(decoded[i], statements[i]));
  }
}

TEST_CASE("a repeat in frame k+1 resolves against frame k") {
  Encoder encoder(default_options());
  auto first = encoder.encode(simple_triple());
  auto second = encoder.encode(simple_triple());  // all repeats

  Decoder decoder;
  auto a = decoder.decode(first);
  auto b = decoder.decode(second);  // separate call = separate frame
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(statement_equal(b[0], simple_triple()));
}

TEST_CASE("repeat elision never grows the serialized stream") {
  testutil::StatementGenConfig config;
  config.repeat_position_probability = 0.4;
  testutil::StatementGen gen(config, 31);
  auto statements = gen.take(2000);

  auto with = bench::encode_stream_bytes(statements, {"full", 150, 4000, 32, true},
                                         100, CompressionMode::none());
  auto without = bench::encode_stream_bytes(statements, {"norepeat", 150, 4000, 32,
                                                         false},
                                            100, CompressionMode::none());
  std::size_t bytes_with = 0, bytes_without = 0;
  for (const auto& f : with) bytes_with += f.size();
  for (const auto& f : without) bytes_without += f.size();
  CHECK(bytes_with <= bytes_without);
}
