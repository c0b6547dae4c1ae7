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
#include <unordered_map>
#include <unordered_set>

#include "spmt/adversary.hpp"
#include "spmt/item_log.hpp"
#include "spmt/frame_server.hpp"
#include "spmt/messages.hpp"

namespace spmt {

// The untrusted database host: stores exported batches, emits ACKs, serves
// positional range reads to monitors. Misbehavior per AdversaryMode.
class DatabaseService {
 public:
  struct Options {
    std::string listen_address = "127.0.0.1:0";
    AdversaryMode adversary;
    std::string log_file;  // empty = in-memory only
  };

  explicit DatabaseService(Options opts);
  ~DatabaseService();

  void start();
  void stop();
  std::string address() const { return server_.address(); }

  // Core operations, also callable in-process (used by tests and the
  // bench preload path).
  uint64_t store_batch(uint64_t batch_index, const std::vector<DataItem>& items,
                       std::vector<uint64_t>* acks_out = nullptr);
  RangeResult read_range(const std::string& requester_id, uint64_t from_position,
                         uint64_t max_items) const;

  // Introspection for the harness.
  uint64_t item_count() const;
  uint64_t committed_batches() const;
  uint64_t acks_sent_for(uint64_t batch_index) const;
  bool contains_payload(ByteView payload) const;
  bool drop_triggered() const { return drop_triggered_; }
  void compact();

 private:
  std::optional<std::vector<Frame>> handle_frame(const Frame& frame);
  const std::vector<ItemLog::Entry>& entries_for(const std::string& requester_id) const;
  char view_of(const std::string& requester_id) const;

  Options opts_;
  mutable std::mutex mu_;
  ItemLog log_;                               // view A (the only view unless forking)
  std::vector<ItemLog::Entry> view_b_;        // fork mode only
  std::vector<ItemLog::Entry> visible_a_;     // view A minus hidden batches
  std::atomic<bool> drop_triggered_{false};   // drop_after_monitor armed->fired
  std::unordered_set<uint64_t> acked_;        // batch indices acknowledged at least once
  std::unordered_map<uint64_t, uint64_t> ack_counts_;
  FrameServer server_;
};

}  // namespace spmt
