// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 3 checks the hand-written wire codec byte-for-byte
// against code generated by protoc from proto/jelly.proto.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "jelly.pb.h"
#include "jelly/bench.hpp"
#include "jelly/channel.hpp"
#include "jelly/codec.hpp"
#include "jelly/compression.hpp"
#include "jelly/framing.hpp"
#include "jelly/ntriples.hpp"
#include "jelly/synthetic.hpp"
#include "jelly/wire.hpp"
#include "testutil.hpp"

using namespace jelly;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

[[noreturn]] void fail(const std::string& message) { throw Error(message); }

void require(bool condition, const std::string& message) {
  if (!condition) fail(message);
}

// ---------------------------------------------------------------------------
// Criterion 1: codec roundtrip, 1e5 statements, all variants, frame sizes.
// ---------------------------------------------------------------------------

void criterion_roundtrip() {
  auto t0 = Clock::now();

  testutil::StatementGenConfig triples_cfg;
  triples_cfg.rdf_star = true;
  testutil::StatementGenConfig quads_cfg = triples_cfg;
  quads_cfg.quads = true;

  auto triples = testutil::StatementGen(triples_cfg, 20250801).take(50000);
  auto quads = testutil::StatementGen(quads_cfg, 20250802).take(50000);

  for (const auto& statements : {triples, quads}) {
    for (const auto& variant : bench::VariantConfig::all()) {
      for (std::size_t frame_rows : {std::size_t(1), std::size_t(10),
                                     std::size_t(1000)}) {
        auto payloads = bench::encode_stream_bytes(statements, variant, frame_rows,
                                                   CompressionMode::none());
        auto decoded = bench::decode_stream_bytes(payloads);
        require(decoded.size() == statements.size(),
                variant.name + ": count mismatch");
        for (std::size_t i = 0; i < decoded.size(); ++i)
          if (!statement_equal(decoded[i], statements[i]))
            fail(variant.name + ": statement " + std::to_string(i) +
                 " not equal after roundtrip");
      }
    }
  }
  double dt = seconds_since(t0);
  require(dt < 30.0, "roundtrip took " + std::to_string(dt) + " s (budget 30 s)");
}

// ---------------------------------------------------------------------------
// Criterion 2: LRU behavior equals a brute-force oracle on 1e4 sequences.
// ---------------------------------------------------------------------------

void criterion_lru_oracle() {
  std::size_t sequences = 0;
  testutil::Rng rng(77001);
  while (sequences < 10000) {
    for (std::uint32_t capacity = 1; capacity <= 8 && sequences < 10000;
         ++capacity, ++sequences) {
      LruLookup table(capacity);
      testutil::LruOracle oracle(capacity);
      std::size_t ops = 20 + rng.below(120);
      for (std::size_t i = 0; i < ops; ++i) {
        std::string value = "v" + std::to_string(rng.below(capacity * 3 + 1));
        auto got = table.get_or_insert(value);
        auto want = oracle.get_or_insert(value);
        require(got.id == want.id && static_cast<int>(got.event) == want.event,
                "step result diverged from the oracle");
        require(table.entries_by_recency() == oracle.state(),
                "table state diverged from the oracle");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 3: byte equality with the protoc-generated reference codec.
// ---------------------------------------------------------------------------

template <typename Msg>
void build_term_spo(Msg* msg, const wire::WireTerm& term, int position);

void build_literal(jelly::v1::RdfLiteral* msg, const wire::WireLiteral& lit) {
  msg->set_lexical(lit.lexical);
  switch (lit.kind) {
    case wire::WireLiteral::Kind::None: break;
    case wire::WireLiteral::Kind::Lang: msg->set_langtag(lit.langtag); break;
    case wire::WireLiteral::Kind::Datatype:
      msg->set_datatype_id(lit.datatype_id);
      break;
  }
}

void build_triple_msg(jelly::v1::RdfTriple* msg, const wire::WireTripleTerms& t) {
  build_term_spo(msg, t.subject, 0);
  build_term_spo(msg, t.predicate, 1);
  build_term_spo(msg, t.object, 2);
}

template <typename Msg>
void build_term_spo(Msg* msg, const wire::WireTerm& term, int position) {
  auto iri_slot = [&]() -> jelly::v1::RdfIri* {
    switch (position) {
      case 0: return msg->mutable_s_iri();
      case 1: return msg->mutable_p_iri();
      default: return msg->mutable_o_iri();
    }
  };
  switch (term.index()) {
    case 0: {
      const auto& iri = std::get<wire::WireIri>(term);
      auto* slot = iri_slot();
      if (iri.prefix_id) slot->set_prefix_id(iri.prefix_id);
      if (iri.name_id) slot->set_name_id(iri.name_id);
      return;
    }
    case 1: {
      const auto& label = std::get<wire::WireBNode>(term).label;
      switch (position) {
        case 0: msg->set_s_bnode(label); return;
        case 1: msg->set_p_bnode(label); return;
        default: msg->set_o_bnode(label); return;
      }
    }
    case 2: {
      const auto& lit = std::get<wire::WireLiteral>(term);
      switch (position) {
        case 0: build_literal(msg->mutable_s_literal(), lit); return;
        case 1: build_literal(msg->mutable_p_literal(), lit); return;
        default: build_literal(msg->mutable_o_literal(), lit); return;
      }
    }
    case 3: {
      const auto& q = *std::get<wire::WireQuoted>(term).terms;
      switch (position) {
        case 0: build_triple_msg(msg->mutable_s_quoted_triple(), q); return;
        case 1: build_triple_msg(msg->mutable_p_quoted_triple(), q); return;
        default: build_triple_msg(msg->mutable_o_quoted_triple(), q); return;
      }
    }
    case 4:
      switch (position) {
        case 0: msg->mutable_s_repeat(); return;
        case 1: msg->mutable_p_repeat(); return;
        default: msg->mutable_o_repeat(); return;
      }
    default:
      fail("default graph outside the graph position");
  }
}

void build_graph_term(jelly::v1::RdfQuad* msg, const wire::WireTerm& term) {
  switch (term.index()) {
    case 0: {
      const auto& iri = std::get<wire::WireIri>(term);
      auto* slot = msg->mutable_g_iri();
      if (iri.prefix_id) slot->set_prefix_id(iri.prefix_id);
      if (iri.name_id) slot->set_name_id(iri.name_id);
      return;
    }
    case 1: msg->set_g_bnode(std::get<wire::WireBNode>(term).label); return;
    case 2: build_literal(msg->mutable_g_literal(), std::get<wire::WireLiteral>(term)); return;
    case 3:
      build_triple_msg(msg->mutable_g_quoted_triple(),
                       *std::get<wire::WireQuoted>(term).terms);
      return;
    case 4: msg->mutable_g_repeat(); return;
    default: msg->mutable_g_default_graph(); return;
  }
}

jelly::v1::RdfStreamFrame build_reference_frame(const wire::StreamFrame& frame) {
  jelly::v1::RdfStreamFrame out;
  for (const auto& row : frame.rows) {
    auto* row_msg = out.add_rows();
    switch (row.index()) {
      case 0: {
        const auto& o = std::get<wire::StreamOptions>(row);
        auto* opts = row_msg->mutable_options();
        opts->set_stream_name(o.stream_name);
        opts->set_physical_type(static_cast<jelly::v1::PhysicalStreamType>(
            static_cast<int>(o.physical_type)));
        opts->set_generalized_statements(o.generalized);
        opts->set_use_rdf_star(o.rdf_star);
        opts->set_max_name_table_size(o.max_name_table);
        opts->set_max_prefix_table_size(o.max_prefix_table);
        opts->set_max_datatype_table_size(o.max_datatype_table);
        opts->set_version(o.version);
        break;
      }
      case 1: {
        const auto& e = std::get<wire::LookupEntry>(row);
        jelly::v1::RdfLookupEntry* entry =
            e.table == wire::LookupKind::Prefix ? row_msg->mutable_prefix_entry()
            : e.table == wire::LookupKind::Name ? row_msg->mutable_name_entry()
                                                : row_msg->mutable_datatype_entry();
        if (e.id) entry->set_id(e.id);
        entry->set_value(e.value);
        break;
      }
      case 2: {
        const auto& t = std::get<wire::RowTriple>(row);
        build_triple_msg(row_msg->mutable_triple(),
                         wire::WireTripleTerms{t.subject, t.predicate, t.object});
        break;
      }
      default: {
        const auto& q = std::get<wire::RowQuad>(row);
        auto* quad = row_msg->mutable_quad();
        build_term_spo(quad, q.subject, 0);
        build_term_spo(quad, q.predicate, 1);
        build_term_spo(quad, q.object, 2);
        build_graph_term(quad, q.graph);
        break;
      }
    }
  }
  return out;
}

void criterion_wire_golden() {
  testutil::FrameGen gen(31337);
  for (int i = 0; i < 1000; ++i) {
    wire::StreamFrame frame = gen.frame();
    wire::Bytes mine = wire::encode_frame(frame);

    jelly::v1::RdfStreamFrame reference = build_reference_frame(frame);
    std::string theirs;
    require(reference.SerializeToString(&theirs), "reference serialization failed");

    require(mine.size() == theirs.size() &&
                std::equal(mine.begin(), mine.end(),
                           reinterpret_cast<const std::uint8_t*>(theirs.data())),
            "frame " + std::to_string(i) + ": byte mismatch with the reference");

    // Decode direction 1: our decoder on reference bytes.
    wire::StreamFrame back = wire::decode_frame(
        std::span(reinterpret_cast<const std::uint8_t*>(theirs.data()),
                  theirs.size()));
    require(back == frame, "frame " + std::to_string(i) +
                               ": decode of reference bytes diverged");

    // Decode direction 2: reference parser on our bytes.
    jelly::v1::RdfStreamFrame reparsed;
    require(reparsed.ParseFromArray(mine.data(), static_cast<int>(mine.size())),
            "reference failed to parse our bytes");
    std::string reserialized;
    require(reparsed.SerializeToString(&reserialized), "reference reserialize failed");
    require(reserialized == theirs,
            "frame " + std::to_string(i) + ": reference reserialization diverged");
  }
}

// ---------------------------------------------------------------------------
// Criterion 4: compression ratios on the 1e6-triple sensor corpus.
// ---------------------------------------------------------------------------

struct SharedCorpus {
  std::vector<Statement> sensor_1m;
};

void criterion_ratios(const SharedCorpus& corpus) {
  const auto& statements = corpus.sensor_1m;
  auto full = bench::measure_size(statements, bench::VariantConfig::parse("full"),
                                  false, 1000);
  auto full_gz = bench::measure_size(statements, bench::VariantConfig::parse("full"),
                                     true, 1000);
  auto noprefix = bench::measure_size(
      statements, bench::VariantConfig::parse("noprefix"), false, 1000);
  auto noprefix_sm = bench::measure_size(
      statements, bench::VariantConfig::parse("noprefix-sm"), false, 1000);
  auto norepeat = bench::measure_size(
      statements, bench::VariantConfig::parse("norepeat"), false, 1000);

  char line[160];
  std::snprintf(line, sizeof(line),
                "    ratios: full %.2f%%, full+gzip %.2f%%, noprefix %.2f%%, "
                "noprefix-sm %.2f%%, norepeat %.2f%%",
                full.ratio * 100, full_gz.ratio * 100, noprefix.ratio * 100,
                noprefix_sm.ratio * 100, norepeat.ratio * 100);
  std::cout << line << "\n";

  require(full.ratio <= 0.35, "jelly-full ratio above 35%");
  require(noprefix.ratio <= 0.40, "jelly-noprefix ratio above 40%");
  require(full_gz.ratio <= 0.08, "jelly-full+gzip ratio above 8%");
  require(full.serialized_bytes <= noprefix.serialized_bytes,
          "jelly-full larger than jelly-noprefix");
  require(noprefix.serialized_bytes <= noprefix_sm.serialized_bytes,
          "jelly-noprefix larger than jelly-noprefix-sm");
  require(full.serialized_bytes <= norepeat.serialized_bytes,
          "jelly-full larger than jelly-norepeat");
}

// ---------------------------------------------------------------------------
// Criterion 5: encode and decode each sustain >= 50 kT/s single-threaded.
// ---------------------------------------------------------------------------

void criterion_throughput_floor(const SharedCorpus& corpus) {
  auto t0 = Clock::now();
  auto report = bench::bench_serdes(corpus.sensor_1m,
                                    bench::VariantConfig::parse("full"), 1000,
                                    /*warmups=*/1, /*repetitions=*/3);
  char line[120];
  std::snprintf(line, sizeof(line), "    ser %.0f kT/s, des %.0f kT/s",
                report.ser_mean_kts, report.des_mean_kts);
  std::cout << line << "\n";
  require(report.ser_mean_kts >= 50.0, "serialization below 50 kT/s");
  require(report.des_mean_kts >= 50.0, "deserialization below 50 kT/s");
  double dt = seconds_since(t0);
  require(dt < 60.0, "throughput floor took " + std::to_string(dt) +
                         " s (budget 60 s)");
}

// ---------------------------------------------------------------------------
// Criterion 6: gzip wins under the 15/50 profile, loses under unlimited.
// ---------------------------------------------------------------------------

double median_e2e_kts(std::span<const Statement> statements,
                      const bench::E2eConfig& config, int runs) {
  std::vector<double> kts;
  bench::run_e2e(statements, config);  // warm-up
  for (int i = 0; i < runs; ++i) kts.push_back(bench::run_e2e(statements, config).kts);
  return bench::percentile(kts, 0.5);
}

void criterion_e2e_trend(const SharedCorpus& corpus) {
  std::span<const Statement> statements(corpus.sensor_1m.data(), 100000);

  bench::E2eConfig config;
  config.transport = bench::Transport::Socket;
  config.variant = bench::VariantConfig::parse("full");
  config.frame_rows = 1000;

  config.profile = NetProfile::parse("15-50");
  config.compression = CompressionMode::none();
  double limited_plain = median_e2e_kts(statements, config, 3);
  config.compression = CompressionMode::gzip();
  double limited_gzip = median_e2e_kts(statements, config, 3);

  config.profile = NetProfile::unlimited();
  double unlimited_gzip = median_e2e_kts(statements, config, 3);
  config.compression = CompressionMode::none();
  double unlimited_plain = median_e2e_kts(statements, config, 3);

  char line[160];
  std::snprintf(line, sizeof(line),
                "    15/50: plain %.0f vs gzip %.0f kT/s; unlimited: plain %.0f vs "
                "gzip %.0f kT/s",
                limited_plain, limited_gzip, unlimited_plain, unlimited_gzip);
  std::cout << line << "\n";

  require(limited_gzip > limited_plain,
          "gzip did not beat plain under the 15/50 profile");
  require(unlimited_plain > unlimited_gzip,
          "plain did not beat gzip under the unlimited profile");
  require(unlimited_plain > limited_plain,
          "removing the bandwidth cap did not raise plain throughput");
}

// ---------------------------------------------------------------------------
// Criterion 7: latency record count, floor under 10/100, p50 under interval.
// ---------------------------------------------------------------------------

void criterion_latency(const SharedCorpus& corpus) {
  std::span<const Statement> statements(corpus.sensor_1m.data(), 5000);

  bench::LatencyConfig config;
  config.transport = bench::Transport::Socket;
  config.variant = bench::VariantConfig::parse("full");
  config.message_size = 50;
  config.messages = 1000;

  config.profile = NetProfile::parse("10-100");
  config.interval = std::chrono::microseconds(1000);
  auto limited = bench::run_latency(statements, config);
  require(limited.latencies_us.size() == 1000, "expected exactly 1000 records");
  double min_latency = *std::min_element(limited.latencies_us.begin(),
                                         limited.latencies_us.end());
  require(min_latency >= 10000.0,
          "latency below the 10 ms one-way floor: " + std::to_string(min_latency) +
              " us");

  config.profile = NetProfile::unlimited();
  config.interval = std::chrono::microseconds(10000);
  auto unlimited = bench::run_latency(statements, config);
  require(unlimited.latencies_us.size() == 1000, "expected exactly 1000 records");
  char line[120];
  std::snprintf(line, sizeof(line),
                "    10/100 min %.2f ms; unlimited p50 %.3f ms (interval 10 ms)",
                min_latency / 1000.0, unlimited.p50_us / 1000.0);
  std::cout << line << "\n";
  require(unlimited.p50_us < 10000.0, "p50 not below the 10 ms interval");
}

// ---------------------------------------------------------------------------
// Criterion 8: transport transparency for 1e3 frames, all profiles, +-gzip.
// ---------------------------------------------------------------------------

void criterion_transparency() {
  testutil::FrameGen gen(808);
  std::vector<wire::Bytes> frames;
  for (int i = 0; i < 1000; ++i) frames.push_back(wire::encode_frame(gen.frame()));

  for (const char* profile_name : {"unlimited", "10-100", "15-50"}) {
    for (bool gzip : {false, true}) {
      NetProfile profile = NetProfile::parse(profile_name);
      CompressionMode mode =
          gzip ? CompressionMode::gzip() : CompressionMode::none();

      Pipe pipe(1 << 20);
      std::exception_ptr producer_error;
      std::thread producer([&] {
        try {
          PipeSink raw(pipe);
          ShapedSink shaped(raw, profile);
          for (const auto& frame : frames) write_frame(shaped, compress(mode, frame));
          shaped.close();
          pipe.close_write();
        } catch (...) {
          producer_error = std::current_exception();
          pipe.close_write();
        }
      });

      PipeSource source_raw(pipe);
      BufferedSource source(source_raw);
      std::size_t index = 0;
      std::optional<std::string> failure;
      try {
        while (auto payload = read_frame(source)) {
          if (decompress(mode, *payload) != frames.at(index))
            fail("frame " + std::to_string(index) + " corrupted (" + profile_name +
                 (gzip ? "+gzip" : "") + ")");
          ++index;
        }
        if (index != frames.size())
          fail("frame count mismatch under " + std::string(profile_name));
      } catch (...) {
        producer.join();
        throw;
      }
      producer.join();
      if (producer_error) std::rethrow_exception(producer_error);
    }
  }
}

}  // namespace

int main() {
  SharedCorpus corpus;
  std::cout << "generating the 1e6-triple sensor corpus..." << std::endl;
  corpus.sensor_1m = generate_statements(1000000, 2022, SyntheticFlavor::Sensor);

  struct Criterion {
    int number;
    const char* title;
    std::function<void()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "codec roundtrip (1e5 statements, 4 variants, frame sizes 1/10/1000)",
       [&] { criterion_roundtrip(); }},
      {2, "LRU oracle equivalence (1e4 sequences, capacities 1-8)",
       [&] { criterion_lru_oracle(); }},
      {3, "wire golden bytes vs protoc-generated reference (1000 frames)",
       [&] { criterion_wire_golden(); }},
      {4, "compression ratios on the sensor corpus",
       [&] { criterion_ratios(corpus); }},
      {5, "single-thread throughput floor (>= 50 kT/s each way)",
       [&] { criterion_throughput_floor(corpus); }},
      {6, "end-to-end gzip trend across 15/50 and unlimited profiles",
       [&] { criterion_e2e_trend(corpus); }},
      {7, "latency series shape and floors",
       [&] { criterion_latency(corpus); }},
      {8, "transport transparency across profiles and gzip",
       [&] { criterion_transparency(); }},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    auto t0 = Clock::now();
    try {
      criterion.body();
      std::printf("PASS criterion %d: %s (%.1f s)\n", criterion.number,
                  criterion.title, seconds_since(t0));
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion %d: %s: %s\n", criterion.number, criterion.title,
                  e.what());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
