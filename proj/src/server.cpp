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

#include "spmt/server.hpp"

#include <sys/socket.h>

#include <vector>

namespace spmt {

void ConnServer::start(TcpListener listener, Handler handler) {
  listener_ = std::move(listener);
  handler_ = std::move(handler);
  running_ = true;
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void ConnServer::accept_loop() {
  while (running_) {
    auto conn = listener_.accept();
    if (!conn) break;
    std::lock_guard<std::mutex> lock(mu_);
    if (!running_) break;
    uint64_t id = next_conn_id_++;
    conn_fds_[id] = conn->fd();
    conn_threads_[id] = std::thread([this, id, c = std::move(*conn)]() mutable {
      try {
        handler_(c);
      } catch (...) {
        // connection handlers fail independently; the socket just closes
      }
      c.close();
      std::lock_guard<std::mutex> lock(mu_);
      conn_fds_.erase(id);
    });
  }
}

void ConnServer::stop() {
  if (!running_.exchange(false)) return;
  listener_.shutdown_accepts();
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [id, fd] : conn_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  listener_.close();
  // Threads remove themselves from conn_fds_ but never from conn_threads_,
  // so joining here is race-free.
  std::map<uint64_t, std::thread> threads;
  {
    std::lock_guard<std::mutex> lock(mu_);
    threads.swap(conn_threads_);
  }
  for (auto& [id, t] : threads)
    if (t.joinable()) t.join();
}

}  // namespace spmt
