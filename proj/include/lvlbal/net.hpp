#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace lvlbal::net {

// Blocking TCP stream that reads and writes LF-terminated lines. Owns its fd.
class LineSocket {
 public:
  LineSocket() = default;
  explicit LineSocket(int fd) : fd_(fd) {}
  ~LineSocket();
  LineSocket(LineSocket&& other) noexcept;
  LineSocket& operator=(LineSocket&& other) noexcept;
  LineSocket(const LineSocket&) = delete;
  LineSocket& operator=(const LineSocket&) = delete;

  // Throws IoError when the peer cannot be reached.
  static LineSocket connect(const std::string& host, std::uint16_t port);

  bool valid() const { return fd_ >= 0; }
  // nullopt on EOF.
  std::optional<std::string> read_line();
  void write_line(const std::string& line);

 private:
  int fd_ = -1;
  std::string buffer_;
};

// Listening socket bound to 127.0.0.1 (or any address when `any_address`).
// Port 0 picks a free port; port() reports the bound one.
class Listener {
 public:
  explicit Listener(std::uint16_t port, bool any_address = false);
  ~Listener();
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  std::uint16_t port() const { return port_; }
  LineSocket accept();
  // Unblocks a pending accept().
  void shutdown();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// "host:port" or "port".
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& text);

}  // namespace lvlbal::net
