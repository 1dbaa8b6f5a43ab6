#pragma once

#include <optional>

#include "jelly/bytes.hpp"

namespace jelly {

/// Writes one length-delimited frame: unsigned varint of the payload size,
/// then the payload, then a flush. Payloads must be shorter than 2^32.
void write_frame(ByteSink& sink, std::span<const std::uint8_t> payload);

/// Reads one frame written by write_frame. Returns nullopt on a clean end
/// of stream (at a frame boundary); throws TransportError on truncation
/// mid-varint or mid-payload, or when the length varint exceeds 5 bytes.
std::optional<Bytes> read_frame(BufferedSource& source);

}  // namespace jelly
