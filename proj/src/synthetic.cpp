#include "jelly/synthetic.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "jelly/error.hpp"
#include "jelly/ntriples.hpp"

namespace jelly {

namespace {

constexpr const char* kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
constexpr const char* kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";
constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

constexpr std::size_t kDeviceCount = 20;

// A mid-sized observed-property vocabulary: large enough that a 256-entry
// name table thrashes on it while the default 4000-entry table keeps it
// resident.
constexpr std::size_t kPropertyCount = 500;

const char* const kPropertyStems[] = {
    "temperature", "humidity", "pressure", "windSpeed", "battery", "illuminance",
};

const std::string& property_iri(std::size_t index) {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> out;
    out.reserve(kPropertyCount);
    for (std::size_t i = 0; i < kPropertyCount; ++i)
      out.push_back(std::string("http://example.org/properties/") +
                    kPropertyStems[i % std::size(kPropertyStems)] +
                    std::to_string(i / std::size(kPropertyStems)));
    return out;
  }();
  return pool[index];
}

// One observation is a fixed five-triple group sharing its subject.
const char* const kSensorPredicates[] = {
    kRdfType,
    "http://example.org/vocab/madeBySensor",
    "http://example.org/vocab/observedProperty",
    "http://example.org/vocab/hasSimpleResult",
    "http://example.org/vocab/resultTime",
};

const char* const kSocialPredicates[] = {
    kRdfType,
    "http://social.example/vocab#author",
    "http://social.example/vocab#content",
    "http://social.example/vocab#tag",
    "http://social.example/vocab#mentions",
    "http://social.example/vocab#repliesTo",
    "http://social.example/vocab#score",
};

const char* const kSocialWords[] = {
    "stream", "graph",  "signal", "harbor", "meadow", "copper", "quartz", "violet",
    "summit", "ember",  "willow", "falcon", "breeze", "cinder", "lantern", "orchid",
};

std::string format_result(std::uint64_t raw) {
  // Two-decimal reading in [-20.00, 59.99].
  std::int64_t scaled = static_cast<std::int64_t>(raw % 8000) - 2000;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", scaled < 0 ? "-" : "",
                static_cast<long long>(std::llabs(scaled) / 100),
                static_cast<long long>(std::llabs(scaled) % 100));
  return buf;
}

std::string format_timestamp(std::uint64_t micros_since_base) {
  std::uint64_t total_s = micros_since_base / 1'000'000;
  std::uint64_t us = micros_since_base % 1'000'000;
  unsigned day = static_cast<unsigned>(total_s / 86400 % 28) + 1;
  unsigned rem = static_cast<unsigned>(total_s % 86400);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "2022-06-%02uT%02u:%02u:%02u.%06lluZ", day,
                rem / 3600, rem / 60 % 60, rem % 60,
                static_cast<unsigned long long>(us));
  return buf;
}

std::string hex40(std::uint64_t v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%010llx",
                static_cast<unsigned long long>(v & 0xFFFFFFFFFFull));
  return buf;
}

}  // namespace

SyntheticFlavor parse_flavor(const std::string& name) {
  if (name == "sensor") return SyntheticFlavor::Sensor;
  if (name == "social") return SyntheticFlavor::Social;
  if (name == "mixed") return SyntheticFlavor::Mixed;
  throw Error("unknown flavor '" + name + "' (expected sensor, social or mixed)");
}

SyntheticGenerator::SyntheticGenerator(SyntheticFlavor flavor, std::uint64_t seed)
    : flavor_(flavor), rng_state_(seed ^ 0x9E3779B97F4A7C15ull) {}

// splitmix64: tiny, stable across platforms.
std::uint64_t SyntheticGenerator::rand_below(std::uint64_t bound) {
  rng_state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = rng_state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return bound ? z % bound : z;
}

Statement SyntheticGenerator::next_sensor() {
  if (group_step_ == 0) {
    ++observation_;
    device_ = rand_below(kDeviceCount);
    property_ = rand_below(kPropertyCount);
    clock_us_ += 500 + rand_below(1500);  // strictly increasing
    char buf[80];
    std::snprintf(buf, sizeof(buf), "http://example.org/sensors/dev%02zu/obs/%llu",
                  device_, static_cast<unsigned long long>(observation_));
    obs_subject_ = buf;
  }
  Term subject = Term::iri(obs_subject_);
  const char* predicate = kSensorPredicates[group_step_];
  Term object = [&] {
    switch (group_step_) {
      case 0:
        return Term::iri("http://example.org/vocab/Observation");
      case 1: {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "http://example.org/sensors/dev%02zu",
                      device_);
        return Term::iri(buf);
      }
      case 2:
        return Term::iri(property_iri(property_));
      case 3:
        return Term::literal(format_result(rand_below(0)),
                             LiteralKind::typed(kXsdDouble));
      default:
        return Term::literal(format_timestamp(clock_us_),
                             LiteralKind::typed(kXsdDateTime));
    }
  }();
  group_step_ = (group_step_ + 1) % 5;
  return Statement::triple(std::move(subject), Term::iri(predicate),
                           std::move(object));
}

Statement SyntheticGenerator::next_social() {
  Term subject = Term::iri("http://social.example/post/" + hex40(rand_below(0)));
  std::size_t pick = rand_below(std::size(kSocialPredicates));
  Term predicate = Term::iri(kSocialPredicates[pick]);
  Term object = [&]() -> Term {
    switch (pick) {
      case 0:
        return Term::iri("http://social.example/vocab#Post");
      case 1:
      case 4:
        return Term::iri("http://social.example/user/" + hex40(rand_below(0)));
      case 5:
        return Term::iri("http://social.example/post/" + hex40(rand_below(0)));
      case 2: {
        std::string text;
        std::size_t words = 3 + rand_below(9);
        for (std::size_t i = 0; i < words; ++i) {
          if (i) text += ' ';
          text += kSocialWords[rand_below(std::size(kSocialWords))];
        }
        return Term::literal(std::move(text), LiteralKind::lang("en"));
      }
      case 3:
        return Term::literal(
            std::string(kSocialWords[rand_below(std::size(kSocialWords))]) + "-" +
            std::to_string(rand_below(1000)));
      default:
        return Term::literal(std::to_string(rand_below(100000)),
                             LiteralKind::typed(kXsdInteger));
    }
  }();
  return Statement::triple(std::move(subject), std::move(predicate),
                           std::move(object));
}

Statement SyntheticGenerator::next() {
  switch (flavor_) {
    case SyntheticFlavor::Sensor:
      return next_sensor();
    case SyntheticFlavor::Social:
      return next_social();
    case SyntheticFlavor::Mixed:
      if (block_remaining_ == 0) {
        block_remaining_ = 64;
        block_social_ = rand_below(2) == 1;
        group_step_ = 0;  // never split a sensor group across blocks
      }
      --block_remaining_;
      return block_social_ ? next_social() : next_sensor();
  }
  throw Error("unreachable flavor");
}

void generate_synthetic(std::ostream& out, std::size_t triples, std::uint64_t seed,
                        SyntheticFlavor flavor) {
  SyntheticGenerator gen(flavor, seed);
  for (std::size_t i = 0; i < triples; ++i) out << nt::write_statement(gen.next());
}

void generate_synthetic_file(const std::string& path, std::size_t triples,
                             std::uint64_t seed, SyntheticFlavor flavor) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  generate_synthetic(out, triples, seed, flavor);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

std::vector<Statement> generate_statements(std::size_t triples, std::uint64_t seed,
                                           SyntheticFlavor flavor) {
  std::vector<Statement> out;
  out.reserve(triples);
  SyntheticGenerator gen(flavor, seed);
  for (std::size_t i = 0; i < triples; ++i) out.push_back(gen.next());
  return out;
}

}  // namespace jelly
