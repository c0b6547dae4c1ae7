// Copyright 2026 SPMT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spmt/socket.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "spmt/error.hpp"

namespace spmt {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

sockaddr_in make_addr(const std::string& host, uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
    throw ConfigError("bad IPv4 address: " + host);
  return addr;
}

void set_timeout_opt(int fd, int opt, std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = timeout.count() / 1000;
  tv.tv_usec = (timeout.count() % 1000) * 1000;
  setsockopt(fd, SOL_SOCKET, opt, &tv, sizeof(tv));
}

}  // namespace

std::pair<std::string, uint16_t> parse_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size())
    throw ConfigError("expected host:port, got: " + address);
  int port = 0;
  try {
    port = std::stoi(address.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("bad port in address: " + address);
  }
  if (port < 0 || port > 65535) throw ConfigError("port out of range: " + address);
  return {address.substr(0, colon), static_cast<uint16_t>(port)};
}

TcpConn::TcpConn(TcpConn&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpConn& TcpConn::operator=(TcpConn&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

TcpConn::~TcpConn() { close(); }

TcpConn TcpConn::connect(const std::string& address, std::chrono::milliseconds timeout) {
  auto [host, port] = parse_address(address);
  sockaddr_in addr = make_addr(host, port);
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw_errno("socket");
  set_timeout_opt(fd, SO_SNDTIMEO, timeout);
  set_timeout_opt(fd, SO_RCVTIMEO, timeout);
  int one = 1;
  setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    int saved = errno;
    ::close(fd);
    errno = saved;
    throw_errno("connect " + address);
  }
  return TcpConn(fd);
}

void TcpConn::send_all(ByteView data) {
  size_t sent = 0;
  while (sent < data.size()) {
    ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<size_t>(n);
  }
}

bool TcpConn::recv_exact(uint8_t* dst, size_t len) {
  size_t got = 0;
  while (got < len) {
    ssize_t n = ::recv(fd_, dst + got, len - got, 0);
    if (n == 0) {
      if (got == 0) return false;
      throw TransportError("peer closed mid-message");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("recv");
    }
    got += static_cast<size_t>(n);
  }
  return true;
}

void TcpConn::drain_pending() {
  uint8_t buf[4096];
  while (true) {
    ssize_t n = ::recv(fd_, buf, sizeof(buf), MSG_DONTWAIT);
    if (n <= 0) break;
  }
}

void TcpConn::set_recv_timeout(std::chrono::milliseconds timeout) {
  set_timeout_opt(fd_, SO_RCVTIMEO, timeout);
}

void TcpConn::shutdown_both() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void TcpConn::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

int TcpConn::release() {
  int fd = fd_;
  fd_ = -1;
  return fd;
}

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(other.fd_.exchange(-1)), port_(other.port_) {}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    close();
    fd_.store(other.fd_.exchange(-1));
    port_ = other.port_;
  }
  return *this;
}

TcpListener::~TcpListener() { close(); }

TcpListener TcpListener::bind_loopback(uint16_t port) {
  return bind("127.0.0.1:" + std::to_string(port));
}

TcpListener TcpListener::bind(const std::string& address) {
  auto [host, port] = parse_address(address);
  sockaddr_in addr = make_addr(host, port);
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw_errno("socket");
  int one = 1;
  setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    int saved = errno;
    ::close(fd);
    errno = saved;
    throw_errno("bind " + address);
  }
  if (::listen(fd, SOMAXCONN) != 0) {
    int saved = errno;
    ::close(fd);
    errno = saved;
    throw_errno("listen " + address);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
  TcpListener out;
  out.fd_.store(fd);
  out.port_ = ntohs(bound.sin_port);
  return out;
}

std::optional<TcpConn> TcpListener::accept() {
  while (true) {
    int listen_fd = fd_.load();
    if (listen_fd < 0) return std::nullopt;
    int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd >= 0) {
      int one = 1;
      setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return TcpConn(fd);
    }
    if (errno == EINTR) continue;
    return std::nullopt;  // listener closed or fatal accept error
  }
}

std::string TcpListener::address() const { return "127.0.0.1:" + std::to_string(port_); }

void TcpListener::shutdown_accepts() {
  int fd = fd_.load();
  if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
}

void TcpListener::close() {
  int fd = fd_.exchange(-1);
  if (fd >= 0) {
    ::shutdown(fd, SHUT_RDWR);
    ::close(fd);
  }
}

}  // namespace spmt
