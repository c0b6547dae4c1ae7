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

#include "spmt/db_service.hpp"

#include <algorithm>

namespace spmt {

DatabaseService::DatabaseService(Options opts)
    : opts_(std::move(opts)),
      log_(opts_.log_file.empty() ? ItemLog() : ItemLog(opts_.log_file)) {}

DatabaseService::~DatabaseService() { stop(); }

void DatabaseService::start() {
  server_.start(TcpListener::bind(opts_.listen_address),
                [this](const Frame& frame) { return handle_frame(frame); });
}

void DatabaseService::stop() {
  server_.stop();
  compact();
}

void DatabaseService::compact() {
  std::lock_guard<std::mutex> lock(mu_);
  if (!opts_.log_file.empty()) log_.compact();
}

uint64_t DatabaseService::store_batch(uint64_t batch_index, const std::vector<DataItem>& items,
                                      std::vector<uint64_t>* acks_out) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto& adv = opts_.adversary;
  bool drop_whole = adv.kind == AdversaryMode::Kind::drop_batch && batch_index == adv.batch;

  if (!drop_whole && !acked_.contains(batch_index)) {
    std::vector<DataItem> stored = items;
    if (adv.kind == AdversaryMode::Kind::drop_item && batch_index == adv.batch &&
        adv.position < stored.size())
      stored.erase(stored.begin() + adv.position);
    log_.append_batch(batch_index, stored);
    if (adv.kind == AdversaryMode::Kind::fork && batch_index != adv.batch) {
      uint32_t pos = 0;
      for (const auto& item : stored)
        view_b_.push_back(ItemLog::Entry{batch_index, pos++, item});
    }
    if (drop_triggered_) {
      // keep the post-trigger view consistent with new appends
      for (const auto& e : log_.entries())
        if (e.batch_index == batch_index) visible_a_.push_back(e);
    }
  }
  acked_.insert(batch_index);

  std::vector<uint64_t> acks;
  if (adv.kind == AdversaryMode::Kind::forge_ack_flood) {
    // Deterministic spray of duplicate, stale and future indices around the
    // one real acknowledgment.
    uint32_t total = adv.spurious_acks_per_store;
    uint32_t before = total / 2;
    auto spurious = [&](uint32_t i) -> uint64_t {
      switch (i % 4) {
        case 0: return batch_index;                      // duplicate
        case 1: return batch_index + 1;                  // future
        case 2: return batch_index + 1000;               // far future
        default: return batch_index > 0 ? batch_index - 1 : batch_index + 2;  // stale
      }
    };
    for (uint32_t i = 0; i < before; ++i) acks.push_back(spurious(i));
    acks.push_back(batch_index);
    for (uint32_t i = before; i < total; ++i) acks.push_back(spurious(i));
  } else {
    acks.push_back(batch_index);
  }
  for (uint64_t a : acks) ++ack_counts_[a];
  if (acks_out != nullptr) *acks_out = std::move(acks);
  return batch_index;
}

char DatabaseService::view_of(const std::string& requester_id) const {
  auto it = opts_.adversary.view_assignment.find(requester_id);
  return it == opts_.adversary.view_assignment.end() ? 'A' : it->second;
}

const std::vector<ItemLog::Entry>& DatabaseService::entries_for(
    const std::string& requester_id) const {
  if (opts_.adversary.kind == AdversaryMode::Kind::fork && view_of(requester_id) == 'B')
    return view_b_;
  if (drop_triggered_) return visible_a_;
  return log_.entries();
}

RangeResult DatabaseService::read_range(const std::string& requester_id, uint64_t from_position,
                                        uint64_t max_items) const {
  auto* self = const_cast<DatabaseService*>(this);
  std::lock_guard<std::mutex> lock(self->mu_);
  const auto& entries = entries_for(requester_id);

  RangeResult result;
  if (from_position >= entries.size()) {
    result.end_position = entries.size();
    return result;
  }
  uint64_t end = std::min<uint64_t>(entries.size(), from_position + max_items);
  result.items.reserve(end - from_position);
  for (uint64_t i = from_position; i < end; ++i) result.items.push_back(entries[i].item);
  result.end_position = end;

  // drop_after_monitor: once a monitor's download has covered the target
  // batch, hide that batch from every later read.
  const auto& adv = opts_.adversary;
  if (adv.kind == AdversaryMode::Kind::drop_after_monitor && !drop_triggered_ &&
      requester_id.rfind("monitor", 0) == 0) {
    bool covered = false;
    bool seen_target = false;
    for (size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].batch_index == adv.batch) {
        seen_target = true;
        if (i >= end) {
          covered = false;
          break;
        }
        covered = true;
      }
    }
    if (seen_target && covered) {
      self->visible_a_.clear();
      for (const auto& e : log_.entries())
        if (e.batch_index != adv.batch) self->visible_a_.push_back(e);
      self->drop_triggered_ = true;
    }
  }
  return result;
}

uint64_t DatabaseService::item_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_.size();
}

uint64_t DatabaseService::committed_batches() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_.committed_batches();
}

uint64_t DatabaseService::acks_sent_for(uint64_t batch_index) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ack_counts_.find(batch_index);
  return it == ack_counts_.end() ? 0 : it->second;
}

bool DatabaseService::contains_payload(ByteView payload) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto& entries = drop_triggered_ ? visible_a_ : log_.entries();
  for (const auto& e : entries) {
    if (e.item.payload.size() == payload.size() &&
        std::equal(payload.begin(), payload.end(), e.item.payload.begin()))
      return true;
  }
  return false;
}

std::optional<std::vector<Frame>> DatabaseService::handle_frame(const Frame& frame) {
  std::vector<Frame> out;
  try {
    switch (frame.type) {
      case msg::kDbStore: {
        DbStore store = decode_db_store(view(frame.body));
        std::vector<uint64_t> acks;
        store_batch(store.batch_index, store.items, &acks);
        for (uint64_t a : acks) out.push_back(Frame{msg::kDbAck, encode_db_ack(a)});
        return out;
      }
      case msg::kReadRange: {
        ReadRange req = decode_read_range(view(frame.body));
        RangeResult result = read_range(req.requester_id, req.from_position, req.max_items);
        out.push_back(Frame{msg::kRange, encode_range_result(result)});
        return out;
      }
      default:
        return std::nullopt;  // unknown message: drop the connection
    }
  } catch (const EncodingError&) {
    return std::nullopt;
  }
}

}  // namespace spmt
