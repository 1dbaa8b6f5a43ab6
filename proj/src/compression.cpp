#include "jelly/compression.hpp"

#include <zlib.h>

namespace jelly {

namespace {
// windowBits 15 with the gzip wrapper requested.
constexpr int kGzipWindowBits = 15 + 16;
}  // namespace

Bytes compress(CompressionMode mode, std::span<const std::uint8_t> payload) {
  if (!mode.is_gzip()) return Bytes(payload.begin(), payload.end());

  z_stream zs{};
  if (deflateInit2(&zs, mode.level(), Z_DEFLATED, kGzipWindowBits, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK)
    throw TransportError("deflateInit2 failed");

  Bytes out(deflateBound(&zs, static_cast<uLong>(payload.size())));
  zs.next_in = const_cast<Bytef*>(payload.data());
  zs.avail_in = static_cast<uInt>(payload.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  if (rc != Z_STREAM_END) {
    deflateEnd(&zs);
    throw TransportError("deflate failed with code " + std::to_string(rc));
  }
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

Bytes decompress(CompressionMode mode, std::span<const std::uint8_t> payload) {
  if (!mode.is_gzip()) return Bytes(payload.begin(), payload.end());

  z_stream zs{};
  if (inflateInit2(&zs, kGzipWindowBits) != Z_OK)
    throw TransportError("inflateInit2 failed");

  Bytes out;
  out.resize(std::max<std::size_t>(payload.size() * 4, 1024));
  zs.next_in = const_cast<Bytef*>(payload.data());
  zs.avail_in = static_cast<uInt>(payload.size());
  std::size_t written = 0;
  while (true) {
    zs.next_out = out.data() + written;
    zs.avail_out = static_cast<uInt>(out.size() - written);
    int rc = inflate(&zs, Z_NO_FLUSH);
    written = out.size() - zs.avail_out;
    if (rc == Z_STREAM_END) break;
    if (rc == Z_OK || rc == Z_BUF_ERROR) {
      if (zs.avail_in == 0 && rc == Z_BUF_ERROR) {
        inflateEnd(&zs);
        throw TransportError("truncated gzip payload");
      }
      out.resize(out.size() * 2);
      continue;
    }
    inflateEnd(&zs);
    throw TransportError("corrupt gzip payload (code " + std::to_string(rc) + ")");
  }
  if (zs.avail_in != 0) {
    inflateEnd(&zs);
    throw TransportError("trailing bytes after gzip member");
  }
  out.resize(written);
  inflateEnd(&zs);
  return out;
}

}  // namespace jelly
