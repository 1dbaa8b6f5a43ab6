#include "jelly/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <thread>

#include "jelly/channel.hpp"
#include "jelly/codec.hpp"
#include "jelly/framing.hpp"
#include "jelly/net.hpp"
#include "jelly/ntriples.hpp"

namespace jelly::bench {

using Clock = std::chrono::steady_clock;

// --- CSV ---

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

// Reads one CSV record, honoring newlines inside quoted fields. Returns
// false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false;
  bool any = false;
  int c;
  while ((c = in.get()) != std::char_traits<char>::eof()) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          cur += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        cur += static_cast<char>(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      break;
    } else {
      cur += static_cast<char>(c);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(cur));
  return true;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BenchResult> results) {
  out << "experiment,config,dataset,metric,repetition,value\n";
  for (const auto& r : results) {
    write_field(out, r.experiment);
    out << ',';
    write_field(out, r.config);
    out << ',';
    write_field(out, r.dataset);
    out << ',';
    write_field(out, r.metric);
    out << ',' << r.repetition << ',' << format_double(r.value) << '\n';
  }
}

std::vector<BenchResult> read_csv(std::istream& in) {
  std::vector<BenchResult> out;
  std::vector<std::string> fields;
  bool header = true;
  while (read_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    if (fields.size() != 6)
      throw Error("malformed results line with " + std::to_string(fields.size()) +
                  " fields");
    BenchResult r;
    r.experiment = fields[0];
    r.config = fields[1];
    r.dataset = fields[2];
    r.metric = fields[3];
    r.repetition = std::stoll(fields[4]);
    const std::string& v = fields[5];
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), r.value);
    if (ec != std::errc{} || p != v.data() + v.size())
      throw Error("malformed value '" + v + "' in results line");
    out.push_back(std::move(r));
  }
  return out;
}

// --- variants ---

VariantConfig VariantConfig::parse(const std::string& name) {
  for (const auto& v : all())
    if (v.name == name) return v;
  throw Error("unknown variant '" + name +
              "' (expected full, noprefix, noprefix-sm or norepeat)");
}

const std::vector<VariantConfig>& VariantConfig::all() {
  static const std::vector<VariantConfig> variants = {
      {"full", 150, 4000, 32, true},
      {"noprefix", 0, 4000, 32, true},
      {"noprefix-sm", 0, 256, 32, true},
      {"norepeat", 150, 4000, 32, false},
  };
  return variants;
}

namespace {

bool term_has_quoted(const Term& t) {
  if (!t.is_quoted_triple()) return false;
  return true;
}

bool statement_is_generalized(const Statement& s) {
  if (!valid_strict_subject(s.subject()) || !valid_strict_predicate(s.predicate()))
    return true;
  if (s.is_quad() && !s.graph().is_default() && !valid_strict_graph(s.graph().term()))
    return true;
  // Quoted triples are checked recursively.
  const Term* stack[3] = {&s.subject(), &s.predicate(), &s.object()};
  for (const Term* t : stack) {
    if (t->is_quoted_triple()) {
      const auto& q = t->quoted();
      Statement inner = Statement::triple(q.subject, q.predicate, q.object);
      if (statement_is_generalized(inner)) return true;
    }
  }
  return false;
}

}  // namespace

wire::StreamOptions options_for(const VariantConfig& variant,
                                std::span<const Statement> statements) {
  wire::StreamOptions opts;
  opts.max_prefix_table = variant.prefix_capacity;
  opts.max_name_table = variant.name_capacity;
  opts.max_datatype_table = variant.datatype_capacity;
  for (const Statement& s : statements) {
    if (s.is_quad()) opts.physical_type = wire::PhysicalType::Quads;
    if (term_has_quoted(s.subject()) || term_has_quoted(s.predicate()) ||
        term_has_quoted(s.object()) ||
        (s.is_quad() && !s.graph().is_default() &&
         term_has_quoted(s.graph().term())))
      opts.rdf_star = true;
    if (statement_is_generalized(s)) opts.generalized = true;
  }
  return opts;
}

std::vector<Statement> load_statements(const std::string& path, bool generalized) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::vector<Statement> out;
  nt::Reader reader(in, generalized);
  while (auto s = reader.next()) out.push_back(std::move(*s));
  return out;
}

// --- stream encoding helpers ---

std::vector<wire::StreamFrame> encode_stream(std::span<const Statement> statements,
                                             const VariantConfig& variant,
                                             std::size_t frame_rows) {
  if (frame_rows == 0) throw Error("frame_rows must be positive");
  std::vector<wire::StreamFrame> frames;
  Encoder encoder(options_for(variant, statements));
  wire::StreamFrame frame;
  std::size_t statements_in_frame = 0;
  for (const Statement& s : statements) {
    encoder.encode_into(s, variant.use_repeat, frame.rows);
    if (++statements_in_frame == frame_rows) {
      frames.push_back(std::move(frame));
      frame = {};
      statements_in_frame = 0;
    }
  }
  if (statements_in_frame > 0) frames.push_back(std::move(frame));
  if (frames.empty()) frames.push_back(wire::StreamFrame{{encoder.options_row()}});
  return frames;
}

std::vector<Bytes> encode_stream_bytes(std::span<const Statement> statements,
                                       const VariantConfig& variant,
                                       std::size_t frame_rows,
                                       CompressionMode compression) {
  std::vector<Bytes> out;
  for (const auto& frame : encode_stream(statements, variant, frame_rows))
    out.push_back(compress(compression, wire::encode_frame(frame)));
  return out;
}

namespace {

bool looks_gzipped(std::span<const std::uint8_t> payload) {
  return payload.size() >= 2 && payload[0] == 0x1F && payload[1] == 0x8B;
}

Bytes maybe_decompress(Bytes payload) {
  if (looks_gzipped(payload)) return decompress(CompressionMode::gzip(), payload);
  return payload;
}

}  // namespace

std::vector<Statement> decode_stream_bytes(std::span<const Bytes> frames) {
  std::vector<Statement> out;
  Decoder decoder;
  for (const Bytes& payload : frames) {
    auto frame = wire::decode_frame(maybe_decompress(payload));
    decoder.decode_into(frame.rows, out);
  }
  return out;
}

// --- serdes speed ---

namespace {

double kts(std::size_t statements, double seconds) {
  return seconds > 0 ? static_cast<double>(statements) / seconds / 1000.0 : 0.0;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

SerdesReport bench_serdes(std::span<const Statement> statements,
                          const VariantConfig& variant, std::size_t frame_rows,
                          int warmups, int repetitions) {
  SerdesReport report;

  auto encode_pass = [&]() -> double {
    auto t0 = Clock::now();
    Encoder encoder(options_for(variant, statements));
    std::vector<wire::StreamRow> rows;
    std::size_t in_frame = 0;
    std::uint64_t sink = 0;
    for (const Statement& s : statements) {
      encoder.encode_into(s, variant.use_repeat, rows);
      if (++in_frame == frame_rows) {
        sink += wire::encode_frame(wire::StreamFrame{std::move(rows)}).size();
        rows = {};
        in_frame = 0;
      }
    }
    if (in_frame) sink += wire::encode_frame(wire::StreamFrame{std::move(rows)}).size();
    std::chrono::duration<double> dt = Clock::now() - t0;
    if (sink == 0 && !statements.empty()) throw Error("encode produced no bytes");
    return dt.count();
  };

  // Decode input is prepared once, outside the timed region.
  std::vector<Bytes> encoded;
  for (const auto& frame : encode_stream(statements, variant, frame_rows))
    encoded.push_back(wire::encode_frame(frame));

  auto decode_pass = [&]() -> double {
    auto t0 = Clock::now();
    Decoder decoder;
    std::vector<Statement> out;
    std::size_t count = 0;
    for (const Bytes& payload : encoded) {
      auto frame = wire::decode_frame(payload);
      out.clear();
      decoder.decode_into(frame.rows, out);
      count += out.size();
    }
    std::chrono::duration<double> dt = Clock::now() - t0;
    if (count != statements.size()) throw Error("decode statement count mismatch");
    return dt.count();
  };

  for (int i = 0; i < warmups; ++i) {
    encode_pass();
    decode_pass();
  }
  for (int i = 0; i < repetitions; ++i) {
    report.ser_kts.push_back(kts(statements.size(), encode_pass()));
    report.des_kts.push_back(kts(statements.size(), decode_pass()));
  }
  report.ser_mean_kts = mean(report.ser_kts);
  report.des_mean_kts = mean(report.des_kts);
  report.theoretical_kts = std::min(report.ser_mean_kts, report.des_mean_kts);
  return report;
}

// --- size ---

SizeReport measure_size(std::span<const Statement> statements,
                        const VariantConfig& variant, bool gzip,
                        std::size_t frame_rows) {
  SizeReport report;
  for (const Statement& s : statements)
    report.ntriples_bytes += nt::write_statement(s).size();
  CompressionMode mode = gzip ? CompressionMode::gzip() : CompressionMode::none();
  MemorySink sink;
  for (const Bytes& payload :
       encode_stream_bytes(statements, variant, frame_rows, mode))
    write_frame(sink, payload);
  report.serialized_bytes = sink.bytes().size();
  report.ratio = report.ntriples_bytes
                     ? static_cast<double>(report.serialized_bytes) /
                           static_cast<double>(report.ntriples_bytes)
                     : 0.0;
  return report;
}

// --- end-to-end plumbing ---

Transport parse_transport(const std::string& name) {
  if (name == "socket") return Transport::Socket;
  if (name == "topic") return Transport::Topic;
  throw Error("unknown transport '" + name + "' (expected socket or topic)");
}

namespace {

// Runs a producer and a consumer body on two threads, joining both even on
// failure and rethrowing the first error.
void run_pair(const std::function<void()>& producer,
              const std::function<void()>& consumer) {
  std::exception_ptr producer_err, consumer_err;
  std::thread consumer_thread([&] {
    try {
      consumer();
    } catch (...) {
      consumer_err = std::current_exception();
    }
  });
  std::thread producer_thread([&] {
    try {
      producer();
    } catch (...) {
      producer_err = std::current_exception();
    }
  });
  producer_thread.join();
  consumer_thread.join();
  if (consumer_err) std::rethrow_exception(consumer_err);
  if (producer_err) std::rethrow_exception(producer_err);
}

class StreamVerifier {
public:
  explicit StreamVerifier(std::span<const Statement> expected)
      : expected_(expected) {}

  void check(std::span<const Statement> decoded) {
    for (const Statement& s : decoded) {
      if (index_ >= expected_.size())
        throw TransportError("received more statements than were sent");
      if (!(s == expected_[index_]))
        throw TransportError("stream corruption at statement " +
                             std::to_string(index_));
      ++index_;
    }
  }

  /// Cycled comparison for latency runs that wrap around the input.
  void check_cycled(std::span<const Statement> decoded, std::size_t limit) {
    for (const Statement& s : decoded) {
      if (index_ >= limit)
        throw TransportError("received more statements than were sent");
      if (!(s == expected_[index_ % expected_.size()]))
        throw TransportError("stream corruption at statement " +
                             std::to_string(index_));
      ++index_;
    }
  }

  std::size_t count() const { return index_; }

  void expect_exactly(std::size_t n) const {
    if (index_ != n)
      throw TransportError("received " + std::to_string(index_) + " of " +
                           std::to_string(n) + " statements");
  }

private:
  std::span<const Statement> expected_;
  std::size_t index_ = 0;
};

struct FrameProducerState {
  Encoder encoder;
  bool use_repeat;
  std::size_t frame_rows;
  CompressionMode compression;
  wire::StreamFrame frame;
  std::size_t statements_in_frame = 0;
  bool sent_any = false;

  FrameProducerState(const wire::StreamOptions& options, bool use_repeat_,
                     std::size_t frame_rows_, CompressionMode compression_)
      : encoder(options),
        use_repeat(use_repeat_),
        frame_rows(frame_rows_),
        compression(compression_) {}

  template <typename Emit>
  void push(const Statement& s, Emit&& emit) {
    encoder.encode_into(s, use_repeat, frame.rows);
    if (++statements_in_frame == frame_rows) flush_frame(emit);
  }

  template <typename Emit>
  void flush_frame(Emit&& emit) {
    if (frame.rows.empty()) return;
    emit(compress(compression, wire::encode_frame(frame)));
    frame.rows.clear();
    statements_in_frame = 0;
    sent_any = true;
  }

  template <typename Emit>
  void finish(Emit&& emit) {
    flush_frame(emit);
    if (!sent_any)
      emit(compress(compression,
                    wire::encode_frame(wire::StreamFrame{{encoder.options_row()}})));
  }
};

}  // namespace

E2eRun run_e2e(std::span<const Statement> statements, const E2eConfig& config) {
  config.profile.validate();
  std::atomic<std::int64_t> start_ns{0}, end_ns{0};
  auto now_ns = [] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               Clock::now().time_since_epoch())
        .count();
  };
  wire::StreamOptions options = options_for(config.variant, statements);

  auto consume_payload = [&](StreamVerifier& verifier, Decoder& decoder,
                             std::vector<Statement>& scratch, Bytes payload) {
    auto frame = wire::decode_frame(maybe_decompress(std::move(payload)));
    scratch.clear();
    decoder.decode_into(frame.rows, scratch);
    verifier.check(scratch);
  };

  if (config.transport == Transport::Socket) {
    TcpListener listener;
    auto consumer = [&] {
      TcpConn conn = listener.accept();
      BufferedSource source(conn);
      Decoder decoder;
      StreamVerifier verifier(statements);
      std::vector<Statement> scratch;
      while (auto payload = read_frame(source))
        consume_payload(verifier, decoder, scratch, std::move(*payload));
      verifier.expect_exactly(statements.size());
      end_ns.store(now_ns());
    };
    auto producer = [&] {
      TcpConn conn = TcpConn::connect_loopback(listener.port());
      std::optional<ShapedSink> shaped;
      ByteSink* sink = &conn;
      if (!config.profile.is_unlimited()) {
        shaped.emplace(conn, config.profile);
        sink = &*shaped;
      }
      start_ns.store(now_ns());
      FrameProducerState state(options, config.variant.use_repeat, config.frame_rows,
                               config.compression);
      auto emit = [&](Bytes payload) { write_frame(*sink, payload); };
      for (const Statement& s : statements) state.push(s, emit);
      state.finish(emit);
      if (shaped) shaped->close();
      conn.shutdown_write();
    };
    run_pair(producer, consumer);
  } else {
    TopicChannel topic("bench", config.profile);
    auto consumer = [&] {
      Decoder decoder;
      StreamVerifier verifier(statements);
      std::vector<Statement> scratch;
      while (auto payload = topic.consume())
        consume_payload(verifier, decoder, scratch, std::move(*payload));
      verifier.expect_exactly(statements.size());
      end_ns.store(now_ns());
    };
    auto producer = [&] {
      start_ns.store(now_ns());
      FrameProducerState state(options, config.variant.use_repeat, config.frame_rows,
                               config.compression);
      auto emit = [&](Bytes payload) { topic.produce(std::move(payload)); };
      for (const Statement& s : statements) state.push(s, emit);
      state.finish(emit);
      topic.close();
    };
    run_pair(producer, consumer);
  }

  E2eRun run;
  run.statements = statements.size();
  run.seconds = static_cast<double>(end_ns.load() - start_ns.load()) / 1e9;
  run.kts = kts(statements.size(), run.seconds);
  return run;
}

LatencyRun run_latency(std::span<const Statement> statements,
                       const LatencyConfig& config) {
  if (statements.empty()) throw Error("latency run needs a non-empty input");
  config.profile.validate();
  const std::size_t total = config.messages * config.message_size;
  wire::StreamOptions options = options_for(config.variant, statements);

  std::vector<std::atomic<std::int64_t>> sent_at_ns(config.messages);
  std::vector<double> latencies_us(config.messages, 0.0);
  auto now_ns = [] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               Clock::now().time_since_epoch())
        .count();
  };

  auto produce_messages = [&](auto&& emit) {
    Encoder encoder(options);
    auto start = Clock::now();
    std::size_t input_index = 0;
    for (std::size_t k = 0; k < config.messages; ++k) {
      std::this_thread::sleep_until(start + config.interval * k);
      sent_at_ns[k].store(now_ns(), std::memory_order_release);
      wire::StreamFrame frame;
      for (std::size_t j = 0; j < config.message_size; ++j) {
        encoder.encode_into(statements[input_index], config.variant.use_repeat,
                            frame.rows);
        input_index = (input_index + 1) % statements.size();
      }
      emit(compress(config.compression, wire::encode_frame(frame)));
    }
  };

  auto consume_messages = [&](auto&& next_payload) {
    Decoder decoder;
    StreamVerifier verifier(statements);
    std::vector<Statement> scratch;
    for (std::size_t k = 0; k < config.messages; ++k) {
      auto payload = next_payload();
      if (!payload) throw TransportError("stream ended before all messages arrived");
      auto frame = wire::decode_frame(maybe_decompress(std::move(*payload)));
      scratch.clear();
      decoder.decode_into(frame.rows, scratch);
      if (scratch.size() != config.message_size)
        throw TransportError("message " + std::to_string(k) + " carried " +
                             std::to_string(scratch.size()) + " statements");
      verifier.check_cycled(scratch, total);
      std::int64_t t1 = now_ns();
      std::int64_t t0 = sent_at_ns[k].load(std::memory_order_acquire);
      latencies_us[k] = static_cast<double>(t1 - t0) / 1000.0;
    }
  };

  if (config.transport == Transport::Socket) {
    TcpListener listener;
    auto consumer = [&] {
      TcpConn conn = listener.accept();
      BufferedSource source(conn);
      consume_messages([&] { return read_frame(source); });
    };
    auto producer = [&] {
      TcpConn conn = TcpConn::connect_loopback(listener.port());
      std::optional<ShapedSink> shaped;
      ByteSink* sink = &conn;
      if (!config.profile.is_unlimited()) {
        shaped.emplace(conn, config.profile);
        sink = &*shaped;
      }
      produce_messages([&](Bytes payload) { write_frame(*sink, payload); });
      if (shaped) shaped->close();
      conn.shutdown_write();
    };
    run_pair(producer, consumer);
  } else {
    TopicChannel topic("bench-latency", config.profile);
    auto consumer = [&] { consume_messages([&] { return topic.consume(); }); };
    auto producer = [&] {
      produce_messages([&](Bytes payload) { topic.produce(std::move(payload)); });
      topic.close();
    };
    run_pair(producer, consumer);
  }

  LatencyRun run;
  run.latencies_us = std::move(latencies_us);
  run.p50_us = percentile(run.latencies_us, 0.50);
  run.p90_us = percentile(run.latencies_us, 0.90);
  run.p99_us = percentile(run.latencies_us, 0.99);
  return run;
}

double percentile(std::vector<double> sample, double q) {
  if (sample.empty()) return 0.0;
  std::sort(sample.begin(), sample.end());
  double rank = std::ceil(q * static_cast<double>(sample.size()));
  auto index = static_cast<std::size_t>(std::max(1.0, rank)) - 1;
  return sample[std::min(index, sample.size() - 1)];
}

}  // namespace jelly::bench
