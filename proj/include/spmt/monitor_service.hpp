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
#include <unordered_set>

#include "spmt/frame_server.hpp"
#include "spmt/hash_chain.hpp"
#include "spmt/messages.hpp"

namespace spmt {

// Mirrors the database and maintains HC_M by the same fold the server uses.
// The periodic sync task owns the mirror; checkpoint and holds-item requests
// read a committed snapshot.
class MonitorState {
 public:
  MonitorState(PrivateKey key, std::string key_id);

  struct PullOutcome {
    uint64_t new_items = 0;
    bool connected = false;
  };

  // Fetches items from synced_position onward and folds them in order.
  // Idempotent when nothing new exists; on connection failure the state is
  // left as of the last fully folded page. stop_at_position caps the pull
  // (harness control for lag experiments).
  PullOutcome pull_and_fold(const std::string& db_address, size_t page_size = 1024,
                            std::optional<uint64_t> stop_at_position = std::nullopt);

  MonitorCheckpoint issue_checkpoint() const;
  bool holds_item(ByteView payload) const;

  Hash32 hc_m() const;
  uint64_t synced_position() const;
  uint64_t mirror_size() const;
  PublicKey public_key() const { return key_.public_key(); }
  const std::string& key_id() const { return key_id_; }

 private:
  const PrivateKey key_;
  const std::string key_id_;

  std::mutex pull_mu_;  // one sync task at a time owns the mirror
  mutable std::mutex mu_;
  Hash32 hc_m_ = chain_genesis();
  uint64_t synced_position_ = 0;
  std::vector<Bytes> mirror_;  // payloads in commit order
  std::unordered_set<Hash32, Hash32Hasher> payload_index_;
};

class MonitorService {
 public:
  struct Options {
    std::string listen_address = "127.0.0.1:0";
    std::string db_address;
    std::chrono::milliseconds pull_period{1000};  // 0 disables the sync task
    size_t page_size = 1024;
  };

  MonitorService(std::unique_ptr<MonitorState> state, Options opts);
  ~MonitorService();

  void start();
  void stop();
  std::string address() const { return server_.address(); }

  MonitorState& state() { return *state_; }
  const MonitorState& state() const { return *state_; }

  // One synchronous pull (used by the harness instead of the timer).
  MonitorState::PullOutcome pull_now(std::optional<uint64_t> stop_at_position = std::nullopt);

 private:
  std::optional<std::vector<Frame>> handle_frame(const Frame& frame);

  std::unique_ptr<MonitorState> state_;
  Options opts_;
  std::atomic<bool> running_{false};
  std::thread pull_thread_;
  FrameServer server_;
};

}  // namespace spmt
