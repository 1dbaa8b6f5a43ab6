#pragma once

#include "jelly/bytes.hpp"

namespace jelly {

/// Per-frame payload compression. Gzip output is an RFC 1952 member.
class CompressionMode {
public:
  static CompressionMode none() { return CompressionMode(false, 0); }
  static CompressionMode gzip(int level = 6) {
    if (level < 1 || level > 9)
      throw TransportError("gzip level must be in 1..9");
    return CompressionMode(true, level);
  }

  bool is_gzip() const { return gzip_; }
  int level() const { return level_; }
  const char* name() const { return gzip_ ? "gzip" : "none"; }

private:
  CompressionMode(bool gzip, int level) : gzip_(gzip), level_(level) {}

  bool gzip_;
  int level_;
};

/// Identity for mode none; otherwise one complete gzip member.
Bytes compress(CompressionMode mode, std::span<const std::uint8_t> payload);

/// Inverse of compress. Throws TransportError on a corrupt container.
Bytes decompress(CompressionMode mode, std::span<const std::uint8_t> payload);

}  // namespace jelly
