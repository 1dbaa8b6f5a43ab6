#include "jelly/channel.hpp"

#include <thread>

namespace jelly {

void Pipe::write(std::span<const std::uint8_t> data) {
  if (data.empty()) return;
  std::size_t offset = 0;
  while (offset < data.size()) {
    std::unique_lock lock(mutex_);
    if (closed_) throw TransportError("write to closed pipe");
    writable_.wait(lock, [this] { return buffered_ < capacity_ || closed_; });
    if (closed_) throw TransportError("write to closed pipe");
    std::size_t room = capacity_ - buffered_;
    std::size_t n = std::min(room, data.size() - offset);
    segments_.emplace_back(data.begin() + static_cast<std::ptrdiff_t>(offset),
                           data.begin() + static_cast<std::ptrdiff_t>(offset + n));
    buffered_ += n;
    offset += n;
    readable_.notify_one();
  }
}

std::size_t Pipe::read(std::span<std::uint8_t> out) {
  if (out.empty()) return 0;
  std::unique_lock lock(mutex_);
  readable_.wait(lock, [this] { return buffered_ > 0 || closed_; });
  if (buffered_ == 0) return 0;  // closed and drained
  std::size_t copied = 0;
  while (copied < out.size() && buffered_ > 0) {
    Bytes& front = segments_.front();
    std::size_t avail = front.size() - pos_;
    std::size_t n = std::min(avail, out.size() - copied);
    std::copy_n(front.begin() + static_cast<std::ptrdiff_t>(pos_), n,
                out.begin() + static_cast<std::ptrdiff_t>(copied));
    copied += n;
    pos_ += n;
    buffered_ -= n;
    if (pos_ == front.size()) {
      segments_.pop_front();
      pos_ = 0;
    }
  }
  writable_.notify_one();
  return copied;
}

void Pipe::close_write() {
  std::unique_lock lock(mutex_);
  closed_ = true;
  readable_.notify_all();
  writable_.notify_all();
}

TopicChannel::TopicChannel(std::string name, NetProfile profile)
    : name_(std::move(name)), profile_(profile) {
  profile_.validate();
  if (profile_.bandwidth_bps)
    bucket_.emplace(static_cast<double>(*profile_.bandwidth_bps) / 8.0);
}

void TopicChannel::produce(Bytes frame) {
  if (bucket_) bucket_->acquire(frame.size());
  auto ready = Clock::now() + profile_.one_way_latency;
  std::unique_lock lock(mutex_);
  if (closed_) throw TransportError("produce on closed topic '" + name_ + "'");
  frames_.emplace_back(ready, std::move(frame));
  readable_.notify_one();
}

std::optional<Bytes> TopicChannel::consume() {
  std::unique_lock lock(mutex_);
  readable_.wait(lock, [this] { return !frames_.empty() || closed_; });
  if (frames_.empty()) return std::nullopt;  // closed and drained
  auto ready = frames_.front().first;
  if (Clock::now() < ready) {
    lock.unlock();
    std::this_thread::sleep_until(ready);
    lock.lock();
  }
  Bytes frame = std::move(frames_.front().second);
  frames_.pop_front();
  return frame;
}

void TopicChannel::close() {
  std::unique_lock lock(mutex_);
  closed_ = true;
  readable_.notify_all();
}

}  // namespace jelly
