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
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "spmt/frame.hpp"

namespace spmt {

// Event-driven request/response server: a small number of epoll workers
// service all connections, so thousands of concurrent clients don't cost a
// thread each. Handlers receive one complete frame and return the frames to
// send back; returning nullopt closes the connection.
class FrameServer {
 public:
  using Handler = std::function<std::optional<std::vector<Frame>>(const Frame&)>;

  FrameServer() = default;
  ~FrameServer();
  FrameServer(const FrameServer&) = delete;
  FrameServer& operator=(const FrameServer&) = delete;

  void start(TcpListener listener, Handler handler, size_t workers = 2);
  void stop();

  std::string address() const { return listener_.address(); }
  uint16_t port() const { return listener_.port(); }

 private:
  struct Conn {
    int fd = -1;
    Bytes in;          // unparsed inbound bytes
    size_t in_head = 0;
    Bytes out;         // pending outbound bytes
    size_t out_head = 0;
  };

  struct Worker {
    int epoll_fd = -1;
    int wake_fd = -1;
    std::thread thread;
    std::mutex mu;
    std::vector<int> pending_adds;
    std::map<int, Conn> conns;
  };

  void accept_loop();
  void worker_loop(Worker& worker);
  bool service_readable(Worker& worker, Conn& conn);
  bool flush_writes(Worker& worker, Conn& conn);
  void close_conn(Worker& worker, Conn& conn);

  TcpListener listener_;
  Handler handler_;
  std::atomic<bool> running_{false};
  std::thread accept_thread_;
  std::vector<std::unique_ptr<Worker>> workers_;
  std::atomic<size_t> next_worker_{0};
};

}  // namespace spmt
