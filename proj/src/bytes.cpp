#include "jelly/bytes.hpp"

#include <cerrno>
#include <cstring>

namespace jelly {

FileSink::FileSink(const std::string& path) : f_(std::fopen(path.c_str(), "wb")),
                                              path_(path) {
  if (!f_) throw TransportError("cannot open '" + path + "' for writing: " +
                                std::strerror(errno));
}

FileSink::~FileSink() {
  if (f_) std::fclose(f_);
}

void FileSink::write(std::span<const std::uint8_t> data) {
  if (data.empty()) return;
  if (std::fwrite(data.data(), 1, data.size(), f_) != data.size())
    throw TransportError("write to '" + path_ + "' failed");
}

void FileSink::flush() {
  if (std::fflush(f_) != 0)
    throw TransportError("flush of '" + path_ + "' failed");
}

FileSource::FileSource(const std::string& path)
    : f_(std::fopen(path.c_str(), "rb")), path_(path) {
  if (!f_) throw TransportError("cannot open '" + path + "' for reading: " +
                                std::strerror(errno));
}

FileSource::~FileSource() {
  if (f_) std::fclose(f_);
}

std::size_t FileSource::read(std::span<std::uint8_t> out) {
  std::size_t n = std::fread(out.data(), 1, out.size(), f_);
  if (n == 0 && std::ferror(f_))
    throw TransportError("read from '" + path_ + "' failed");
  return n;
}

std::size_t BufferedSource::read(std::span<std::uint8_t> out) {
  if (out.empty()) return 0;
  if (pos_ < fill_) {
    std::size_t n = std::min(out.size(), fill_ - pos_);
    std::copy_n(buf_.begin() + static_cast<std::ptrdiff_t>(pos_), n, out.begin());
    pos_ += n;
    return n;
  }
  // Large reads bypass the buffer.
  if (out.size() >= buf_.size()) return inner_.read(out);
  fill_ = inner_.read(buf_);
  pos_ = 0;
  if (fill_ == 0) return 0;
  std::size_t n = std::min(out.size(), fill_);
  std::copy_n(buf_.begin(), n, out.begin());
  pos_ = n;
  return n;
}

int BufferedSource::read_byte_slow() {
  fill_ = inner_.read(buf_);
  pos_ = 0;
  if (fill_ == 0) return -1;
  return buf_[pos_++];
}

}  // namespace jelly
