#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "jelly/compression.hpp"
#include "jelly/rdf.hpp"
#include "jelly/shaper.hpp"
#include "jelly/wire.hpp"

namespace jelly::bench {

/// One measurement record; serialized as one CSV line.
struct BenchResult {
  std::string experiment;
  std::string config;
  std::string dataset;
  std::string metric;  // kT/s | bytes | ratio | latency_us (+ percentile forms)
  long long repetition = 0;
  double value = 0.0;

  friend bool operator==(const BenchResult&, const BenchResult&) = default;
};

/// Column order: experiment,config,dataset,metric,repetition,value. Values
/// are written in shortest-roundtrip form, so read_csv(write_csv(r)) == r.
void write_csv(std::ostream& out, std::span<const BenchResult> results);
std::vector<BenchResult> read_csv(std::istream& in);

/// Compression-settings variant of the stream encoder.
struct VariantConfig {
  std::string name;
  std::uint32_t prefix_capacity = 150;
  std::uint32_t name_capacity = 4000;
  std::uint32_t datatype_capacity = 32;
  bool use_repeat = true;

  /// One of: full, noprefix, noprefix-sm, norepeat.
  static VariantConfig parse(const std::string& name);
  static const std::vector<VariantConfig>& all();
};

/// Stream options for a statement run under a variant; physical type,
/// RDF-star and generalized flags are derived from the statements.
wire::StreamOptions options_for(const VariantConfig& variant,
                                std::span<const Statement> statements);

/// Parses a whole .nt/.nq file into memory.
std::vector<Statement> load_statements(const std::string& path,
                                       bool generalized = false);

/// Encodes a statement run into frames of `frame_rows` statement rows (the
/// last frame may be short; entry rows ride along and do not count).
std::vector<wire::StreamFrame> encode_stream(std::span<const Statement> statements,
                                             const VariantConfig& variant,
                                             std::size_t frame_rows);

/// Serialized frames, optionally gzip-compressed per frame.
std::vector<Bytes> encode_stream_bytes(std::span<const Statement> statements,
                                       const VariantConfig& variant,
                                       std::size_t frame_rows,
                                       CompressionMode compression);

/// Decodes serialized frames back into statements (gzip auto-detected).
std::vector<Statement> decode_stream_bytes(std::span<const Bytes> frames);

// --- raw serialization / deserialization speed ---

struct SerdesReport {
  std::vector<double> ser_kts;  // one per repetition
  std::vector<double> des_kts;
  double ser_mean_kts = 0.0;
  double des_mean_kts = 0.0;
  /// min(ser_mean, des_mean)
  double theoretical_kts = 0.0;
};

SerdesReport bench_serdes(std::span<const Statement> statements,
                          const VariantConfig& variant, std::size_t frame_rows,
                          int warmups, int repetitions);

// --- serialized size ---

struct SizeReport {
  std::uint64_t ntriples_bytes = 0;    // uncompressed N-Triples baseline
  std::uint64_t serialized_bytes = 0;  // delimited jelly frames (+gzip)
  double ratio = 0.0;                  // serialized / baseline
};

SizeReport measure_size(std::span<const Statement> statements,
                        const VariantConfig& variant, bool gzip,
                        std::size_t frame_rows);

// --- end-to-end streaming ---

enum class Transport { Socket, Topic };
Transport parse_transport(const std::string& name);

struct E2eConfig {
  Transport transport = Transport::Socket;
  VariantConfig variant;
  CompressionMode compression = CompressionMode::none();
  NetProfile profile;
  std::size_t frame_rows = 1000;
};

struct E2eRun {
  double seconds = 0.0;
  double kts = 0.0;
  std::size_t statements = 0;
};

/// Streams the statements producer-to-consumer on two threads, decoding and
/// verifying every statement against the input. Throws TransportError on
/// any mismatch; a throughput number is never reported for a corrupt run.
E2eRun run_e2e(std::span<const Statement> statements, const E2eConfig& config);

// --- end-to-end latency ---

struct LatencyConfig {
  Transport transport = Transport::Socket;
  VariantConfig variant;
  CompressionMode compression = CompressionMode::none();
  NetProfile profile;
  std::size_t message_size = 50;  // statements per message
  std::chrono::microseconds interval{1000};
  std::size_t messages = 1000;
};

struct LatencyRun {
  std::vector<double> latencies_us;  // one per message, send order
  double p50_us = 0.0;
  double p90_us = 0.0;
  double p99_us = 0.0;
};

/// Publishes `messages` messages of `message_size` statements at absolute
/// deadlines k*interval, cycling over the input. Latency is measured from
/// serializer entry to deserializer exit on the monotonic clock. Payloads
/// are verified like run_e2e.
LatencyRun run_latency(std::span<const Statement> statements,
                       const LatencyConfig& config);

/// Nearest-rank percentile of an unsorted sample.
double percentile(std::vector<double> sample, double q);

}  // namespace jelly::bench
