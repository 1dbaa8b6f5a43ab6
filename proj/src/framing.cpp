#include "jelly/framing.hpp"

namespace jelly {

void write_frame(ByteSink& sink, std::span<const std::uint8_t> payload) {
  if (payload.size() >= (1ull << 32))
    throw TransportError("frame payload too large");
  std::uint8_t prefix[5];
  std::size_t n = 0;
  std::uint64_t v = payload.size();
  while (v >= 0x80) {
    prefix[n++] = static_cast<std::uint8_t>(v) | 0x80;
    v >>= 7;
  }
  prefix[n++] = static_cast<std::uint8_t>(v);
  sink.write({prefix, n});
  sink.write(payload);
  sink.flush();
}

std::optional<Bytes> read_frame(BufferedSource& source) {
  std::uint64_t len = 0;
  int shift = 0;
  for (int i = 0;; ++i) {
    if (i == 5) throw TransportError("frame length varint longer than 5 bytes");
    int b = source.read_byte();
    if (b < 0) {
      if (i == 0) return std::nullopt;  // clean end of stream
      throw TransportError("stream truncated mid frame length");
    }
    len |= static_cast<std::uint64_t>(b & 0x7F) << shift;
    if ((b & 0x80) == 0) break;
    shift += 7;
  }
  if (len >= (1ull << 32)) throw TransportError("frame length out of range");
  Bytes payload(len);
  std::size_t got = 0;
  while (got < len) {
    std::size_t n = source.read(std::span(payload).subspan(got));
    if (n == 0)
      throw TransportError("stream truncated mid frame payload (" +
                           std::to_string(got) + " of " + std::to_string(len) +
                           " bytes)");
    got += n;
  }
  return payload;
}

}  // namespace jelly
