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
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "spmt/socket.hpp"

namespace spmt {

// Accept loop with one handler thread per connection. stop() closes the
// listener and every live connection, then joins all threads.
class ConnServer {
 public:
  using Handler = std::function<void(TcpConn&)>;

  ConnServer() = default;
  ~ConnServer() { stop(); }
  ConnServer(const ConnServer&) = delete;
  ConnServer& operator=(const ConnServer&) = delete;

  void start(TcpListener listener, Handler handler);
  void stop();

  uint16_t port() const { return listener_.port(); }
  std::string address() const { return listener_.address(); }
  bool running() const { return running_; }

 private:
  void accept_loop();

  TcpListener listener_;
  Handler handler_;
  std::thread accept_thread_;
  std::mutex mu_;
  std::map<uint64_t, std::thread> conn_threads_;
  std::map<uint64_t, int> conn_fds_;
  uint64_t next_conn_id_ = 0;
  std::atomic<bool> running_{false};
};

}  // namespace spmt
