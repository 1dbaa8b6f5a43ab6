#include "jelly/shaper.hpp"

namespace jelly {

NetProfile NetProfile::parse(const std::string& name) {
  if (name == "unlimited") return unlimited();
  if (name == "10-100") return of(10, 100);
  if (name == "15-50") return of(15, 50);
  throw TransportError("unknown network profile '" + name +
                       "' (expected unlimited, 10-100 or 15-50)");
}

std::string NetProfile::name() const {
  if (is_unlimited()) return "unlimited";
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(one_way_latency);
  std::string out = std::to_string(ms.count()) + "-";
  out += bandwidth_bps ? std::to_string(*bandwidth_bps / 1'000'000) : "inf";
  return out;
}

void TokenBucket::refill(Clock::time_point now) {
  std::chrono::duration<double> dt = now - last_;
  last_ = now;
  tokens_ = std::min(capacity_, tokens_ + dt.count() * rate_);
}

void TokenBucket::acquire(std::size_t bytes) {
  double need = static_cast<double>(bytes);
  while (need > 0.0) {
    refill(Clock::now());
    double take = std::min(tokens_, need);
    tokens_ -= take;
    need -= take;
    if (need <= 0.0) return;
    auto wait = std::chrono::duration<double>(need / rate_);
    std::this_thread::sleep_for(
        std::chrono::duration_cast<std::chrono::microseconds>(wait));
  }
}

ShapedSink::ShapedSink(ByteSink& underlying, NetProfile profile)
    : underlying_(underlying), profile_(profile) {
  profile_.validate();
  if (profile_.bandwidth_bps)
    bucket_.emplace(static_cast<double>(*profile_.bandwidth_bps) / 8.0);
  if (!profile_.is_unlimited()) worker_ = std::thread([this] { run(); });
}

ShapedSink::~ShapedSink() {
  try {
    close();
  } catch (...) {
  }
}

void ShapedSink::rethrow_if_failed() {
  if (error_) std::rethrow_exception(error_);
}

void ShapedSink::write(std::span<const std::uint8_t> data) {
  if (profile_.is_unlimited()) {
    underlying_.write(data);
    return;
  }
  if (bucket_) bucket_->acquire(data.size());
  auto ready = Clock::now() + profile_.one_way_latency;
  std::unique_lock lock(mutex_);
  rethrow_if_failed();
  queue_.push_back(Item{ready, Bytes(data.begin(), data.end()), false});
  wake_worker_.notify_one();
}

void ShapedSink::flush() {
  if (profile_.is_unlimited()) {
    underlying_.flush();
    return;
  }
  std::unique_lock lock(mutex_);
  rethrow_if_failed();
  queue_.push_back(Item{Clock::now(), {}, true});
  wake_worker_.notify_one();
}

void ShapedSink::close() {
  if (!worker_.joinable()) return;
  {
    std::unique_lock lock(mutex_);
    drained_.wait(lock, [this] {
      return error_ || (queue_.empty() && !in_flight_);
    });
    stop_ = true;
    wake_worker_.notify_one();
  }
  worker_.join();
  std::unique_lock lock(mutex_);
  rethrow_if_failed();
}

void ShapedSink::run() {
  std::unique_lock lock(mutex_);
  while (true) {
    wake_worker_.wait(lock, [this] { return stop_ || !queue_.empty(); });
    if (queue_.empty()) {
      if (stop_) return;
      continue;
    }
    Item item = std::move(queue_.front());
    queue_.pop_front();
    in_flight_ = true;
    lock.unlock();
    std::this_thread::sleep_until(item.ready);
    try {
      if (item.flush)
        underlying_.flush();
      else
        underlying_.write(item.data);
    } catch (...) {
      lock.lock();
      error_ = std::current_exception();
      in_flight_ = false;
      queue_.clear();
      drained_.notify_all();
      return;
    }
    lock.lock();
    in_flight_ = false;
    if (queue_.empty()) drained_.notify_all();
  }
}

}  // namespace jelly
