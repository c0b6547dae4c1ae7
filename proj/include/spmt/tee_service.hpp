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
#include <memory>
#include <thread>

#include "spmt/frame_server.hpp"
#include "spmt/tee_state.hpp"

namespace spmt {

// Transport to the database host as seen by the export worker. The worker
// owns the discard-and-once ACK rules; the link only moves frames.
class DbLink {
 public:
  virtual ~DbLink() = default;
  // Throws TransportError on connection failure.
  virtual void send_store(uint64_t batch_index, const std::vector<DataItem>& items) = 0;
  // Next DB_ACK index, or nullopt after `timeout` with none arriving.
  // Throws TransportError when the connection dies.
  virtual std::optional<uint64_t> recv_ack(std::chrono::milliseconds timeout) = 0;
  // Discard frames that arrived outside a storage round.
  virtual void drain() = 0;
  virtual void reset() {}
};

std::unique_ptr<DbLink> make_tcp_db_link(std::string db_address);

// The simulated-TEE server: accepts submissions and POP requests over TCP
// and runs the batch export worker against the database host.
class TeeService {
 public:
  struct Options {
    std::string listen_address = "127.0.0.1:0";
    std::chrono::milliseconds ack_timeout{2000};
    std::chrono::milliseconds retry_backoff{100};
  };

  TeeService(std::unique_ptr<TeeState> state, std::unique_ptr<DbLink> db_link);
  TeeService(std::unique_ptr<TeeState> state, std::unique_ptr<DbLink> db_link, Options opts);
  ~TeeService();

  void start();
  void stop();
  std::string address() const { return server_.address(); }

  TeeState& state() { return *state_; }
  const TeeState& state() const { return *state_; }

  // Harness controls.
  void pause_export(bool paused) {
    paused_ = paused;
    state_->set_export_paused(paused);
  }
  bool export_paused() const { return paused_; }
  void preload(size_t count, size_t payload_bytes, std::mt19937_64& rng,
               const std::string& source_key_id = "preload");
  void wait_drained() { state_->wait_drained(); }

 private:
  void export_worker();
  std::optional<std::vector<Frame>> handle_frame(const Frame& frame);

  std::unique_ptr<TeeState> state_;
  std::unique_ptr<DbLink> db_link_;
  Options opts_;
  std::atomic<bool> running_{false};
  std::atomic<bool> paused_{false};
  std::thread worker_;
  FrameServer server_;
};

}  // namespace spmt
