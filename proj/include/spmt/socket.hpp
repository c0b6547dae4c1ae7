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

#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>

#include "spmt/bytes.hpp"

namespace spmt {

// Thin RAII wrappers over blocking TCP sockets. Everything in the protocol
// rides on these two classes; higher layers only see whole frames.

class TcpConn {
 public:
  TcpConn() = default;
  explicit TcpConn(int fd) : fd_(fd) {}
  TcpConn(TcpConn&& other) noexcept;
  TcpConn& operator=(TcpConn&& other) noexcept;
  TcpConn(const TcpConn&) = delete;
  TcpConn& operator=(const TcpConn&) = delete;
  ~TcpConn();

  // "host:port". Throws TransportError on failure.
  static TcpConn connect(const std::string& address,
                         std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));

  void send_all(ByteView data);
  // False on clean EOF before any byte; throws TransportError on errors or
  // mid-buffer EOF.
  bool recv_exact(uint8_t* dst, size_t len);
  // Discard whatever is immediately readable without blocking.
  void drain_pending();

  void set_recv_timeout(std::chrono::milliseconds timeout);
  void shutdown_both();
  void close();
  // Hands the descriptor to the caller; this object no longer owns it.
  int release();
  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

class TcpListener {
 public:
  TcpListener() = default;
  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&& other) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  // Binds 127.0.0.1; port 0 picks a free port.
  static TcpListener bind_loopback(uint16_t port = 0);
  static TcpListener bind(const std::string& address);

  // nullopt once the listener is closed.
  std::optional<TcpConn> accept();

  uint16_t port() const { return port_; }
  std::string address() const;
  // Unblocks accept() from another thread without releasing the fd.
  void shutdown_accepts();
  void close();
  bool valid() const { return fd_.load() >= 0; }

 private:
  std::atomic<int> fd_{-1};
  uint16_t port_ = 0;
};

// Splits "host:port"; throws ConfigError on malformed input.
std::pair<std::string, uint16_t> parse_address(const std::string& address);

}  // namespace spmt
