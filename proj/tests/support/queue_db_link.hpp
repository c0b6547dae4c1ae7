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

#include <condition_variable>
#include <deque>
#include <mutex>

#include "spmt/tee_service.hpp"

namespace spmt::testing {

// In-memory database link for driving the export worker in unit tests.
// Tests script the ACK stream, including forged and duplicate ones.
class QueueDbLink : public DbLink {
 public:
  struct Stored {
    uint64_t batch_index;
    std::vector<DataItem> items;
  };

  // acks_for_store: what to enqueue when a store arrives. Default: the
  // single genuine ACK.
  using AckScript = std::function<std::vector<uint64_t>(uint64_t)>;

  explicit QueueDbLink(AckScript script = nullptr) : script_(std::move(script)) {}

  void send_store(uint64_t batch_index, const std::vector<DataItem>& items) override {
    std::lock_guard<std::mutex> lock(mu_);
    stored_.push_back(Stored{batch_index, items});
    std::vector<uint64_t> acks =
        script_ ? script_(batch_index) : std::vector<uint64_t>{batch_index};
    for (uint64_t a : acks) acks_.push_back(a);
    cv_.notify_all();
  }

  std::optional<uint64_t> recv_ack(std::chrono::milliseconds timeout) override {
    std::unique_lock<std::mutex> lock(mu_);
    if (!cv_.wait_for(lock, timeout, [this] { return !acks_.empty(); })) return std::nullopt;
    uint64_t ack = acks_.front();
    acks_.pop_front();
    return ack;
  }

  void drain() override {
    std::lock_guard<std::mutex> lock(mu_);
    if (keep_pending_on_drain_) return;
    acks_.clear();
  }

  void push_ack(uint64_t index) {
    std::lock_guard<std::mutex> lock(mu_);
    acks_.push_back(index);
    cv_.notify_all();
  }

  void keep_pending_on_drain(bool keep) { keep_pending_on_drain_ = keep; }

  std::vector<Stored> stored() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {stored_.begin(), stored_.end()};
  }

  size_t pending_acks() const {
    std::lock_guard<std::mutex> lock(mu_);
    return acks_.size();
  }

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Stored> stored_;
  std::deque<uint64_t> acks_;
  AckScript script_;
  bool keep_pending_on_drain_ = false;
};

}  // namespace spmt::testing
