#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "jelly/bytes.hpp"

namespace jelly {

/// Emulated network conditions: a one-way delivery delay plus a sustained
/// bandwidth cap. Applied on the producing side of a link.
struct NetProfile {
  std::chrono::microseconds one_way_latency{0};
  std::optional<std::uint64_t> bandwidth_bps;  // nullopt = unlimited

  static NetProfile unlimited() { return {}; }
  static NetProfile of(std::uint64_t latency_ms, std::uint64_t mbit_per_s) {
    return {std::chrono::milliseconds(latency_ms), mbit_per_s * 1'000'000ull};
  }

  bool is_unlimited() const {
    return one_way_latency.count() == 0 && !bandwidth_bps;
  }

  /// Accepts "unlimited", "10-100" (10 ms / 100 Mbit/s) or "15-50".
  static NetProfile parse(const std::string& name);
  std::string name() const;

  void validate() const {
    if (bandwidth_bps && *bandwidth_bps == 0)
      throw TransportError("bounded bandwidth must be positive");
    if (one_way_latency.count() < 0)
      throw TransportError("latency must be non-negative");
  }
};

/// Classic token bucket. Starts empty and refills at `bytes_per_second` up
/// to `burst_seconds` worth of credit, so a transfer of N bytes takes at
/// least N/rate from a cold start and sustained throughput over any window
/// of one second or more stays at or below the configured rate.
class TokenBucket {
public:
  TokenBucket(double bytes_per_second, double burst_seconds = 1.0)
      : rate_(bytes_per_second),
        capacity_(bytes_per_second * burst_seconds),
        last_(Clock::now()) {}

  /// Blocks the caller until `bytes` worth of tokens were consumed.
  void acquire(std::size_t bytes);

private:
  using Clock = std::chrono::steady_clock;

  void refill(Clock::time_point now);

  double rate_;
  double capacity_;
  double tokens_ = 0.0;
  Clock::time_point last_;
};

/// Wraps a sink with a network profile: write() pays the token-bucket cost
/// for the bandwidth cap, then hands the chunk to a delay-line worker that
/// releases it to the underlying sink no earlier than send time plus the
/// one-way latency. Delays on this link never block other channels. With an
/// unlimited profile, writes pass straight through.
class ShapedSink final : public ByteSink {
public:
  ShapedSink(ByteSink& underlying, NetProfile profile);
  ~ShapedSink() override;

  ShapedSink(const ShapedSink&) = delete;
  ShapedSink& operator=(const ShapedSink&) = delete;

  void write(std::span<const std::uint8_t> data) override;
  /// Queues a flush of the underlying sink behind everything written so
  /// far. Does not wait for delivery: latency is the link's business, as
  /// with a real network stack.
  void flush() override;
  /// Drains the delay line and stops the worker. Idempotent; called by the
  /// destructor.
  void close();

private:
  using Clock = std::chrono::steady_clock;

  void run();
  void rethrow_if_failed();

  ByteSink& underlying_;
  NetProfile profile_;
  std::optional<TokenBucket> bucket_;

  struct Item {
    Clock::time_point ready;
    Bytes data;
    bool flush = false;
  };

  std::mutex mutex_;
  std::condition_variable wake_worker_;
  std::condition_variable drained_;
  std::deque<Item> queue_;
  bool in_flight_ = false;
  bool stop_ = false;
  std::exception_ptr error_;
  std::thread worker_;
};

/// Convenience: shape a sink with a profile (identity wrapper semantics for
/// the unlimited profile).
inline ShapedSink shape(ByteSink& underlying, NetProfile profile) {
  return ShapedSink(underlying, profile);
}

}  // namespace jelly
