#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jelly/rdf.hpp"

namespace jelly {

enum class SyntheticFlavor { Sensor, Social, Mixed };

SyntheticFlavor parse_flavor(const std::string& name);

/// Deterministic statement generator: the same (seed, flavor) always yields
/// the same sequence. Sensor output mimics timestamped measurement streams
/// (a small device/predicate vocabulary, numeric and time literals, heavy
/// term repetition). Social output is a high-entropy IRI stream. Mixed
/// interleaves blocks of both.
class SyntheticGenerator {
public:
  SyntheticGenerator(SyntheticFlavor flavor, std::uint64_t seed);

  Statement next();

  /// Upper bound on distinct predicates the sensor flavor will ever use.
  static constexpr std::size_t kSensorPredicateLimit = 32;

private:
  std::uint64_t rand_below(std::uint64_t bound);
  Statement next_sensor();
  Statement next_social();

  SyntheticFlavor flavor_;
  std::uint64_t rng_state_;
  // Sensor stream position.
  std::uint64_t observation_ = 0;
  int group_step_ = 0;
  std::size_t device_ = 0;
  std::size_t property_ = 0;
  std::uint64_t clock_us_ = 0;
  std::string obs_subject_;
  // Mixed-flavor block control.
  int block_remaining_ = 0;
  bool block_social_ = false;
};

/// Writes exactly `triples` N-Triples lines; byte-identical for identical
/// arguments.
void generate_synthetic_file(const std::string& path, std::size_t triples,
                             std::uint64_t seed, SyntheticFlavor flavor);
void generate_synthetic(std::ostream& out, std::size_t triples, std::uint64_t seed,
                        SyntheticFlavor flavor);

std::vector<Statement> generate_statements(std::size_t triples, std::uint64_t seed,
                                           SyntheticFlavor flavor);

}  // namespace jelly
