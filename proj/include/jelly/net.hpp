#pragma once

#include <cstdint>
#include <memory>

#include "jelly/bytes.hpp"

namespace jelly {

/// Connected TCP socket, duplex: a byte sink and source over one stream.
/// TCP_NODELAY is set on both ends.
class TcpConn final : public ByteSink, public ByteSource {
public:
  explicit TcpConn(int fd);
  ~TcpConn() override;

  TcpConn(TcpConn&& other) noexcept;
  TcpConn& operator=(TcpConn&&) = delete;
  TcpConn(const TcpConn&) = delete;
  TcpConn& operator=(const TcpConn&) = delete;

  static TcpConn connect_loopback(std::uint16_t port);

  void write(std::span<const std::uint8_t> data) override;
  std::size_t read(std::span<std::uint8_t> out) override;

  /// Signals end of stream to the peer; reads stay possible.
  void shutdown_write();

private:
  int fd_;
};

/// Listening socket bound to 127.0.0.1 on an ephemeral port.
class TcpListener {
public:
  TcpListener();
  ~TcpListener();

  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  TcpConn accept();

private:
  int fd_;
  std::uint16_t port_;
};

}  // namespace jelly
