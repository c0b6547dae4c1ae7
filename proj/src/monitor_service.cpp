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

#include "spmt/monitor_service.hpp"

#include "spmt/frame.hpp"

namespace spmt {

MonitorState::MonitorState(PrivateKey key, std::string key_id)
    : key_(std::move(key)), key_id_(std::move(key_id)) {}

MonitorState::PullOutcome MonitorState::pull_and_fold(const std::string& db_address,
                                                      size_t page_size,
                                                      std::optional<uint64_t> stop_at_position) {
  std::lock_guard<std::mutex> pull_lock(pull_mu_);
  PullOutcome outcome;
  try {
    TcpConn conn = TcpConn::connect(db_address);
    outcome.connected = true;
    while (true) {
      uint64_t from = synced_position();
      uint64_t max_items = page_size;
      if (stop_at_position) {
        if (from >= *stop_at_position) break;
        max_items = std::min<uint64_t>(max_items, *stop_at_position - from);
      }
      ReadRange req{"monitor:" + key_id_, from, max_items};
      write_frame(conn, msg::kReadRange, view(encode_read_range(req)));
      auto frame = read_frame(conn);
      if (!frame || frame->type != msg::kRange) break;
      RangeResult result = decode_range_result(view(frame->body));
      if (result.items.empty()) break;
      // Commit the page: fold in order, then advance the position.
      std::lock_guard<std::mutex> lock(mu_);
      for (auto& item : result.items) {
        hc_m_ = hash_chain_step(hc_m_, item);
        payload_index_.insert(sha256(view(item.payload)));
        mirror_.push_back(std::move(item.payload));
        ++synced_position_;
        ++outcome.new_items;
      }
    }
  } catch (const Error&) {
    // state holds the last fully folded page; retry at the next period
  }
  return outcome;
}

MonitorCheckpoint MonitorState::issue_checkpoint() const {
  Hash32 hc;
  {
    std::lock_guard<std::mutex> lock(mu_);
    hc = hc_m_;
  }
  MonitorCheckpoint cp;
  cp.hc_m = hc;
  cp.monitor_sig = sign(key_, view(checkpoint_preimage(hc)));
  cp.monitor_key_id = key_id_;
  return cp;
}

bool MonitorState::holds_item(ByteView payload) const {
  std::lock_guard<std::mutex> lock(mu_);
  return payload_index_.contains(sha256(payload));
}

Hash32 MonitorState::hc_m() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hc_m_;
}

uint64_t MonitorState::synced_position() const {
  std::lock_guard<std::mutex> lock(mu_);
  return synced_position_;
}

uint64_t MonitorState::mirror_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return mirror_.size();
}

MonitorService::MonitorService(std::unique_ptr<MonitorState> state, Options opts)
    : state_(std::move(state)), opts_(std::move(opts)) {}

MonitorService::~MonitorService() { stop(); }

void MonitorService::start() {
  running_ = true;
  server_.start(TcpListener::bind(opts_.listen_address),
                [this](const Frame& frame) { return handle_frame(frame); });
  if (opts_.pull_period.count() > 0) {
    pull_thread_ = std::thread([this] {
      while (running_) {
        state_->pull_and_fold(opts_.db_address, opts_.page_size);
        auto wake = std::chrono::steady_clock::now() + opts_.pull_period;
        while (running_ && std::chrono::steady_clock::now() < wake)
          std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
    });
  }
}

void MonitorService::stop() {
  if (!running_.exchange(false)) return;
  if (pull_thread_.joinable()) pull_thread_.join();
  server_.stop();
}

MonitorState::PullOutcome MonitorService::pull_now(std::optional<uint64_t> stop_at_position) {
  return state_->pull_and_fold(opts_.db_address, opts_.page_size, stop_at_position);
}

std::optional<std::vector<Frame>> MonitorService::handle_frame(const Frame& frame) {
  std::vector<Frame> out;
  switch (frame.type) {
    case msg::kCheckpointReq: {
      MonitorCheckpoint cp = state_->issue_checkpoint();
      out.push_back(Frame{msg::kCheckpoint, encode_checkpoint(cp)});
      return out;
    }
    case msg::kHoldsReq: {
      bool holds = state_->holds_item(view(frame.body));
      out.push_back(Frame{msg::kHolds, encode_holds(holds)});
      return out;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace spmt
