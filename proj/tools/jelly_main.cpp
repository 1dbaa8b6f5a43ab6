// jelly: convert between N-Triples/N-Quads and the delimited jelly frame
// format, generate synthetic corpora, and run the streaming benchmarks.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "jelly/bench.hpp"
#include "jelly/bytes.hpp"
#include "jelly/codec.hpp"
#include "jelly/compression.hpp"
#include "jelly/framing.hpp"
#include "jelly/ntriples.hpp"
#include "jelly/synthetic.hpp"

namespace {

using jelly::bench::BenchResult;

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit_results(const std::vector<BenchResult>& results, const std::string& out) {
  if (out.empty() || out == "-") {
    jelly::bench::write_csv(std::cout, results);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw jelly::Error("cannot open '" + out + "' for writing");
  jelly::bench::write_csv(f, results);
}

std::string config_label(const std::string& transport,
                         const jelly::bench::VariantConfig& variant, bool gzip,
                         const jelly::NetProfile& profile) {
  std::string label = transport.empty() ? "" : transport + ":";
  label += "jelly-" + variant.name;
  if (gzip) label += "+gzip";
  label += "@" + profile.name();
  return label;
}

void cmd_convert(const std::string& input, const std::string& output,
                 std::string direction, const std::string& variant_name,
                 std::size_t frame_rows, bool gzip, bool generalized) {
  if (direction == "auto")
    direction = ends_with(input, ".jelly") ? "jelly2nt" : "nt2jelly";

  if (direction == "nt2jelly") {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw jelly::Error("cannot open '" + input + "' for reading");
    // Two passes keep memory flat: the first derives the stream options.
    auto variant = jelly::bench::VariantConfig::parse(variant_name);
    jelly::wire::StreamOptions options;
    options.max_prefix_table = variant.prefix_capacity;
    options.max_name_table = variant.name_capacity;
    options.max_datatype_table = variant.datatype_capacity;
    {
      jelly::nt::Reader scan(in, generalized);
      while (auto s = scan.next()) {
        if (s->is_quad()) options.physical_type = jelly::wire::PhysicalType::Quads;
      }
      in.clear();
      in.seekg(0);
    }
    options.generalized = generalized;
    bool quads = options.physical_type == jelly::wire::PhysicalType::Quads;

    jelly::FileSink file(output);
    jelly::Encoder encoder(options);
    auto mode = gzip ? jelly::CompressionMode::gzip() : jelly::CompressionMode::none();
    jelly::wire::StreamFrame frame;
    std::size_t in_frame = 0;
    std::size_t count = 0;
    jelly::nt::Reader reader(in, generalized);
    auto flush_frame = [&] {
      jelly::write_frame(file, jelly::compress(mode, jelly::wire::encode_frame(frame)));
      frame.rows.clear();
      in_frame = 0;
    };
    while (auto s = reader.next()) {
      // On a quad stream, default-graph lines ride as default-graph quads.
      if (quads && !s->is_quad())
        *s = jelly::Statement::quad(s->subject(), s->predicate(), s->object(),
                                    jelly::GraphName::default_graph());
      encoder.encode_into(*s, variant.use_repeat, frame.rows);
      ++count;
      if (++in_frame == frame_rows) flush_frame();
    }
    if (in_frame > 0) flush_frame();
    if (count == 0) {
      frame.rows.push_back(encoder.options_row());
      flush_frame();
    }
    file.flush();
    std::cerr << "converted " << count << " statements to " << output << "\n";
    return;
  }

  if (direction != "jelly2nt")
    throw jelly::Error("unknown direction '" + direction + "'");
  jelly::FileSource file(input);
  jelly::BufferedSource source(file);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw jelly::Error("cannot open '" + output + "' for writing");
  jelly::Decoder decoder;
  jelly::nt::Writer writer(out);
  std::size_t count = 0;
  std::vector<jelly::Statement> scratch;
  while (auto payload = jelly::read_frame(source)) {
    jelly::Bytes raw = *payload;
    if (raw.size() >= 2 && raw[0] == 0x1F && raw[1] == 0x8B)
      raw = jelly::decompress(jelly::CompressionMode::gzip(), raw);
    auto frame = jelly::wire::decode_frame(raw);
    scratch.clear();
    decoder.decode_into(frame.rows, scratch);
    for (const auto& s : scratch) {
      writer.write(s);
      ++count;
    }
  }
  out.flush();
  if (!out) throw jelly::Error("write to '" + output + "' failed");
  std::cerr << "converted " << count << " statements to " << output << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jelly RDF streaming toolkit"};
  app.require_subcommand(1);

  // convert
  std::string in_path, out_path, direction = "auto", variant_name = "full";
  std::size_t frame_rows = 1000;
  bool gzip = false, generalized = false;
  auto* convert = app.add_subcommand("convert", "convert between .nt/.nq and .jelly");
  convert->add_option("input", in_path, "input file")->required();
  convert->add_option("--out", out_path, "output file")->required();
  convert->add_option("--direction", direction, "nt2jelly | jelly2nt | auto")
      ->check(CLI::IsMember({"auto", "nt2jelly", "jelly2nt"}));
  convert->add_option("--variant", variant_name, "full|noprefix|noprefix-sm|norepeat");
  convert->add_option("--frame-rows", frame_rows, "statement rows per frame")
      ->check(CLI::PositiveNumber);
  convert->add_flag("--gzip", gzip, "gzip each frame payload");
  convert->add_flag("--generalized", generalized, "accept generalized RDF input");

  // gen-synthetic
  std::string flavor_name = "sensor";
  std::size_t triples = 10000;
  std::uint64_t seed = 42;
  auto* gen = app.add_subcommand("gen-synthetic", "generate a synthetic corpus");
  gen->add_option("--out", out_path, "output .nt file")->required();
  gen->add_option("--triples", triples, "number of triples")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "PRNG seed");
  gen->add_option("--flavor", flavor_name, "sensor | social | mixed")
      ->check(CLI::IsMember({"sensor", "social", "mixed"}));

  // shared bench options
  std::string results_path = "-", transport_name = "socket", profile_name = "unlimited";
  int warmups = 3, repetitions = 5;

  // bench-serdes
  auto* serdes = app.add_subcommand("bench-serdes",
                                    "raw serialization/deserialization speed");
  serdes->add_option("input", in_path, "input .nt/.nq file")->required();
  serdes->add_option("--variant", variant_name, "compression variant");
  serdes->add_option("--frame-rows", frame_rows, "statement rows per frame");
  serdes->add_option("--warmups", warmups, "warm-up passes");
  serdes->add_option("--reps", repetitions, "measured repetitions");
  serdes->add_option("--out", results_path, "results CSV path ('-' = stdout)");

  // bench-size
  std::vector<std::string> size_inputs;
  std::vector<std::string> size_variants;
  auto* size = app.add_subcommand("bench-size", "serialized size and ratios");
  size->add_option("input", size_inputs, "input .nt/.nq files")->required();
  size->add_option("--variant", size_variants,
                   "variants to measure (default: all four)");
  size->add_option("--frame-rows", frame_rows, "statement rows per frame");
  size->add_option("--out", results_path, "results CSV path ('-' = stdout)");

  // bench-e2e
  auto* e2e = app.add_subcommand("bench-e2e", "end-to-end streaming throughput");
  e2e->add_option("input", in_path, "input .nt/.nq file")->required();
  e2e->add_option("--transport", transport_name, "socket | topic")
      ->check(CLI::IsMember({"socket", "topic"}));
  e2e->add_option("--variant", variant_name, "compression variant");
  e2e->add_flag("--gzip", gzip, "gzip each frame payload");
  e2e->add_option("--profile", profile_name, "unlimited | 10-100 | 15-50")
      ->check(CLI::IsMember({"unlimited", "10-100", "15-50"}));
  e2e->add_option("--frame-rows", frame_rows, "statement rows per frame");
  e2e->add_option("--warmups", warmups, "warm-up runs");
  e2e->add_option("--reps", repetitions, "measured repetitions");
  e2e->add_option("--out", results_path, "results CSV path ('-' = stdout)");

  // bench-latency
  std::size_t message_size = 50, messages = 1000;
  std::uint64_t interval_us = 1000;
  auto* latency = app.add_subcommand("bench-latency", "end-to-end message latency");
  latency->add_option("input", in_path, "input .nt/.nq file")->required();
  latency->add_option("--transport", transport_name, "socket | topic")
      ->check(CLI::IsMember({"socket", "topic"}));
  latency->add_option("--variant", variant_name, "compression variant");
  latency->add_flag("--gzip", gzip, "gzip each frame payload");
  latency->add_option("--profile", profile_name, "unlimited | 10-100 | 15-50")
      ->check(CLI::IsMember({"unlimited", "10-100", "15-50"}));
  latency->add_option("--message-size", message_size, "statements per message")
      ->check(CLI::PositiveNumber);
  latency->add_option("--interval-us", interval_us, "publish interval in microseconds");
  latency->add_option("--messages", messages, "messages to publish")
      ->check(CLI::PositiveNumber);
  latency->add_option("--out", results_path, "results CSV path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) {
      cmd_convert(in_path, out_path, direction, variant_name, frame_rows, gzip,
                  generalized);
      return 0;
    }

    if (gen->parsed()) {
      jelly::generate_synthetic_file(out_path, triples, seed,
                                     jelly::parse_flavor(flavor_name));
      std::cerr << "wrote " << triples << " " << flavor_name << " triples to "
                << out_path << "\n";
      return 0;
    }

    if (serdes->parsed()) {
      auto statements = jelly::bench::load_statements(in_path);
      auto variant = jelly::bench::VariantConfig::parse(variant_name);
      auto report = jelly::bench::bench_serdes(statements, variant, frame_rows,
                                               warmups, repetitions);
      std::vector<BenchResult> results;
      std::string dataset = basename_of(in_path);
      std::string config = "jelly-" + variant.name;
      for (std::size_t i = 0; i < report.ser_kts.size(); ++i)
        results.push_back({"serdes-ser", config, dataset, "kT/s",
                           static_cast<long long>(i), report.ser_kts[i]});
      for (std::size_t i = 0; i < report.des_kts.size(); ++i)
        results.push_back({"serdes-des", config, dataset, "kT/s",
                           static_cast<long long>(i), report.des_kts[i]});
      results.push_back(
          {"serdes-theoretical", config, dataset, "kT/s", 0, report.theoretical_kts});
      emit_results(results, results_path);
      std::cerr << "ser " << report.ser_mean_kts << " kT/s, des "
                << report.des_mean_kts << " kT/s, theoretical "
                << report.theoretical_kts << " kT/s\n";
      return 0;
    }

    if (size->parsed()) {
      std::vector<jelly::bench::VariantConfig> variants;
      if (size_variants.empty())
        variants = jelly::bench::VariantConfig::all();
      else
        for (const auto& name : size_variants)
          variants.push_back(jelly::bench::VariantConfig::parse(name));
      std::vector<BenchResult> results;
      for (const auto& variant : variants) {
        for (bool with_gzip : {false, true}) {
          std::vector<double> ratios;
          for (const auto& input : size_inputs) {
            auto statements = jelly::bench::load_statements(input);
            auto report =
                jelly::bench::measure_size(statements, variant, with_gzip, frame_rows);
            std::string config = "jelly-" + variant.name + (with_gzip ? "+gzip" : "");
            std::string dataset = basename_of(input);
            results.push_back({"size", config, dataset, "bytes", 0,
                               static_cast<double>(report.serialized_bytes)});
            results.push_back({"size", config, dataset, "ratio", 0, report.ratio});
            ratios.push_back(report.ratio);
          }
          if (size_inputs.size() > 1) {
            double log_sum = 0;
            for (double r : ratios) log_sum += std::log(r);
            double geomean = std::exp(log_sum / static_cast<double>(ratios.size()));
            std::string config = "jelly-" + variant.name + (with_gzip ? "+gzip" : "");
            results.push_back({"size", config, "geomean", "ratio", 0, geomean});
          }
        }
      }
      emit_results(results, results_path);
      return 0;
    }

    if (e2e->parsed()) {
      auto statements = jelly::bench::load_statements(in_path);
      jelly::bench::E2eConfig config;
      config.transport = jelly::bench::parse_transport(transport_name);
      config.variant = jelly::bench::VariantConfig::parse(variant_name);
      config.compression =
          gzip ? jelly::CompressionMode::gzip() : jelly::CompressionMode::none();
      config.profile = jelly::NetProfile::parse(profile_name);
      config.frame_rows = frame_rows;
      std::string label =
          config_label(transport_name, config.variant, gzip, config.profile);
      std::string dataset = basename_of(in_path);
      std::vector<BenchResult> results;
      for (int i = 0; i < warmups; ++i) jelly::bench::run_e2e(statements, config);
      for (int i = 0; i < repetitions; ++i) {
        auto run = jelly::bench::run_e2e(statements, config);
        results.push_back({"e2e", label, dataset, "kT/s", i, run.kts});
        std::cerr << "rep " << i << ": " << run.kts << " kT/s\n";
      }
      emit_results(results, results_path);
      return 0;
    }

    if (latency->parsed()) {
      auto statements = jelly::bench::load_statements(in_path);
      jelly::bench::LatencyConfig config;
      config.transport = jelly::bench::parse_transport(transport_name);
      config.variant = jelly::bench::VariantConfig::parse(variant_name);
      config.compression =
          gzip ? jelly::CompressionMode::gzip() : jelly::CompressionMode::none();
      config.profile = jelly::NetProfile::parse(profile_name);
      config.message_size = message_size;
      config.interval = std::chrono::microseconds(interval_us);
      config.messages = messages;
      auto run = jelly::bench::run_latency(statements, config);
      std::string label =
          config_label(transport_name, config.variant, gzip, config.profile) + ":m" +
          std::to_string(message_size) + ":i" + std::to_string(interval_us) + "us";
      std::string dataset = basename_of(in_path);
      std::vector<BenchResult> results;
      for (std::size_t i = 0; i < run.latencies_us.size(); ++i)
        results.push_back({"latency", label, dataset, "latency_us",
                           static_cast<long long>(i), run.latencies_us[i]});
      results.push_back({"latency-summary", label, dataset, "latency_us_p50", 0,
                         run.p50_us});
      results.push_back({"latency-summary", label, dataset, "latency_us_p90", 0,
                         run.p90_us});
      results.push_back({"latency-summary", label, dataset, "latency_us_p99", 0,
                         run.p99_us});
      emit_results(results, results_path);
      std::cerr << "p50 " << run.p50_us / 1000.0 << " ms, p90 "
                << run.p90_us / 1000.0 << " ms, p99 " << run.p99_us / 1000.0
                << " ms\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
