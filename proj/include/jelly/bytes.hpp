#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "jelly/error.hpp"

namespace jelly {

using Bytes = std::vector<std::uint8_t>;

/// Reliable ordered byte sink. Writes either take all bytes or throw.
class ByteSink {
public:
  virtual ~ByteSink() = default;
  virtual void write(std::span<const std::uint8_t> data) = 0;
  /// After flush returns, everything written is observable by the peer.
  virtual void flush() {}
};

/// Reliable ordered byte source. read() blocks until at least one byte is
/// available and returns 0 only at end of stream.
class ByteSource {
public:
  virtual ~ByteSource() = default;
  virtual std::size_t read(std::span<std::uint8_t> out) = 0;
};

/// Grows a Bytes buffer.
class MemorySink final : public ByteSink {
public:
  void write(std::span<const std::uint8_t> data) override {
    buf_.insert(buf_.end(), data.begin(), data.end());
  }
  const Bytes& bytes() const { return buf_; }
  Bytes take() { return std::move(buf_); }

private:
  Bytes buf_;
};

/// Reads from a borrowed byte span.
class MemorySource final : public ByteSource {
public:
  explicit MemorySource(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t read(std::span<std::uint8_t> out) override {
    std::size_t n = std::min(out.size(), data_.size() - pos_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), n, out.begin());
    pos_ += n;
    return n;
  }

private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

/// Buffered file sink/source (binary mode).
class FileSink final : public ByteSink {
public:
  explicit FileSink(const std::string& path);
  ~FileSink() override;
  FileSink(const FileSink&) = delete;
  FileSink& operator=(const FileSink&) = delete;

  void write(std::span<const std::uint8_t> data) override;
  void flush() override;

private:
  std::FILE* f_;
  std::string path_;
};

class FileSource final : public ByteSource {
public:
  explicit FileSource(const std::string& path);
  ~FileSource() override;
  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;

  std::size_t read(std::span<std::uint8_t> out) override;

private:
  std::FILE* f_;
  std::string path_;
};

/// Read-side buffering with a single-byte fast path, used by the framing
/// reader for varint prefixes.
class BufferedSource final : public ByteSource {
public:
  explicit BufferedSource(ByteSource& inner, std::size_t buf_size = 64 * 1024)
      : inner_(inner) {
    buf_.resize(buf_size);
  }

  std::size_t read(std::span<std::uint8_t> out) override;

  /// Next byte, or -1 at end of stream.
  int read_byte() {
    if (pos_ < fill_) return buf_[pos_++];
    return read_byte_slow();
  }

private:
  int read_byte_slow();

  ByteSource& inner_;
  Bytes buf_;
  std::size_t pos_ = 0;
  std::size_t fill_ = 0;
};

}  // namespace jelly
