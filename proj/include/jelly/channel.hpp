#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <string>

#include "jelly/bytes.hpp"
#include "jelly/shaper.hpp"

namespace jelly {

/// In-process reliable ordered byte stream with bounded buffering, one
/// writer and one reader. write() blocks while the buffer is full; read()
/// blocks until bytes arrive and returns 0 once the write side is closed
/// and the buffer drained.
class Pipe {
public:
  explicit Pipe(std::size_t capacity_bytes = 1 << 20)
      : capacity_(capacity_bytes) {}

  void write(std::span<const std::uint8_t> data);
  std::size_t read(std::span<std::uint8_t> out);
  void close_write();

private:
  std::size_t capacity_;
  std::mutex mutex_;
  std::condition_variable readable_, writable_;
  std::deque<Bytes> segments_;
  std::size_t pos_ = 0;  // consumed bytes of segments_.front()
  std::size_t buffered_ = 0;
  bool closed_ = false;
};

class PipeSink final : public ByteSink {
public:
  explicit PipeSink(Pipe& pipe) : pipe_(pipe) {}
  void write(std::span<const std::uint8_t> data) override { pipe_.write(data); }

private:
  Pipe& pipe_;
};

class PipeSource final : public ByteSource {
public:
  explicit PipeSource(Pipe& pipe) : pipe_(pipe) {}
  std::size_t read(std::span<std::uint8_t> out) override { return pipe_.read(out); }

private:
  Pipe& pipe_;
};

/// In-process single-partition topic: exactly-once, in-order frame delivery
/// from one producer to one consumer. An optional network profile shapes
/// the produce side (frames become consumable one-way-latency after a
/// token-bucket-paced send). close() lets the consumer drain what remains.
class TopicChannel {
public:
  explicit TopicChannel(std::string name,
                        NetProfile profile = NetProfile::unlimited());

  const std::string& name() const { return name_; }

  /// Appends one frame. Throws TransportError if the channel is closed.
  void produce(Bytes frame);

  /// Next frame in produce order, or nullopt once closed and drained.
  std::optional<Bytes> consume();

  void close();

private:
  using Clock = std::chrono::steady_clock;

  std::string name_;
  NetProfile profile_;
  std::optional<TokenBucket> bucket_;
  std::mutex mutex_;
  std::condition_variable readable_;
  std::deque<std::pair<Clock::time_point, Bytes>> frames_;
  bool closed_ = false;
};

}  // namespace jelly
