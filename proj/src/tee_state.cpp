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

#include "spmt/tee_state.hpp"

namespace spmt {

TeeState::TeeState(PrivateKey sk_t, AttestationReport report, KeyRegistry registry, TeeConfig cfg)
    : sk_t_(std::move(sk_t)),
      report_(std::move(report)),
      report_bytes_(report_bytes(report_)),
      registry_(std::move(registry)),
      cfg_(cfg),
      history_(cfg.history_capacity) {
  if (cfg_.batch_capacity == 0) throw ConfigError("batch capacity must be positive");
}

std::variant<ProofOfReception, ErrorCode> TeeState::handle_submission(const DataItem& item) {
  const PublicKey* source_key = registry_.find_data_source(item.source_key_id);
  if (source_key == nullptr) return ErrorCode::unknown_source;
  if (!verify(*source_key, view(item_preimage(view(item.payload))), view(item.source_sig)))
    return ErrorCode::signature_invalid;

  auto cnt_por = assign_to_batch(item);
  if (!cnt_por) return ErrorCode::internal;

  ProofOfReception por;
  por.cnt_por = *cnt_por;
  por.report = report_;
  por.tee_sig = sign(sk_t_, view(por_preimage(view(item.payload), por.cnt_por, view(report_bytes_))));
  return por;
}

void TeeState::append_preload(DataItem item) { assign_to_batch(std::move(item)); }

std::optional<uint64_t> TeeState::assign_to_batch(DataItem item) {
  std::unique_lock<std::mutex> lock(mu_);
  if (cfg_.blocking_submissions) {
    // No reception while a storage round is in flight.
    submit_cv_.wait(lock, [this] {
      return stopping_ ||
             (!export_in_flight_ && (pending_.empty() || !pending_.front().sealed));
    });
  } else {
    submit_cv_.wait(lock,
                    [this] { return stopping_ || pending_.size() < cfg_.max_pending_batches; });
  }
  if (stopping_) return std::nullopt;

  if (pending_.empty() || pending_.back().sealed) {
    PendingBatch batch;
    batch.index = next_batch_index_++;
    batch.first_append = std::chrono::steady_clock::now();
    pending_.push_back(std::move(batch));
    export_cv_.notify_one();  // worker re-arms its flush deadline
  }
  PendingBatch& tail = pending_.back();
  tail.items.push_back(std::move(item));
  uint64_t index = tail.index;
  if (tail.items.size() >= cfg_.batch_capacity) {
    tail.sealed = true;
    export_cv_.notify_one();
  }
  return index;
}

bool TeeState::front_ready(std::chrono::steady_clock::time_point now) const {
  if (export_paused_ || export_in_flight_ || pending_.empty()) return false;
  const PendingBatch& front = pending_.front();
  if (front.sealed) return true;
  return !front.items.empty() && now >= front.first_append + cfg_.flush_timeout;
}

std::optional<BatchExport> TeeState::next_batch(std::chrono::milliseconds wait) {
  std::unique_lock<std::mutex> lock(mu_);
  auto give_up = std::chrono::steady_clock::now() + wait;
  while (!stopping_) {
    auto now = std::chrono::steady_clock::now();
    if (front_ready(now)) break;
    auto deadline = give_up;
    if (!export_in_flight_ && !pending_.empty() && !pending_.front().items.empty())
      deadline = std::min(deadline, pending_.front().first_append + cfg_.flush_timeout);
    if (now >= give_up) return std::nullopt;
    export_cv_.wait_until(lock, deadline);
  }
  if (stopping_) return std::nullopt;

  PendingBatch front = std::move(pending_.front());
  pending_.pop_front();
  export_in_flight_ = true;
  BatchExport out;
  out.batch_index = front.index;
  out.items = std::move(front.items);
  return out;
}

void TeeState::commit_batch(const BatchExport& batch, const Hash32& new_hc) {
  std::lock_guard<std::mutex> lock(mu_);
  if (batch.batch_index != cnt_)
    throw ProtocolError("batch committed out of order");
  history_.append(HashChainEntry{new_hc, cnt_});
  hc_t_ = new_hc;
  ++cnt_;
  ++processed_batches_;
  export_in_flight_ = false;
  submit_cv_.notify_all();
  drain_cv_.notify_all();
}

std::variant<ProofOfProcessing, ErrorCode> TeeState::handle_pop_request(
    const MonitorCheckpoint& cp) {
  const PublicKey* monitor_key = registry_.find_monitor(cp.monitor_key_id);
  if (monitor_key == nullptr) return ErrorCode::unknown_monitor;

  Bytes cache_material;
  put_fixed32(cache_material, cp.hc_m);
  put_len_prefixed(cache_material, view(cp.monitor_sig));
  put_len_prefixed(cache_material, ByteView(
      reinterpret_cast<const uint8_t*>(cp.monitor_key_id.data()), cp.monitor_key_id.size()));
  Hash32 cache_key = sha256(view(cache_material));

  bool cached_ok = false;
  {
    std::lock_guard<std::mutex> lock(cp_cache_mu_);
    cached_ok = cp_cache_valid_ && cp_cache_key_ == cache_key;
  }
  if (!cached_ok) {
    if (!verify(*monitor_key, view(checkpoint_preimage(cp.hc_m)), view(cp.monitor_sig)))
      return ErrorCode::checkpoint_sig_invalid;
    std::lock_guard<std::mutex> lock(cp_cache_mu_);
    cp_cache_key_ = cache_key;
    cp_cache_valid_ = true;
  }

  uint64_t cnt_pop = 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    cnt_pop = history_.lookup(cp.hc_m).value_or(0);
  }
  ProofOfProcessing pop;
  pop.cnt_pop = cnt_pop;
  pop.tee_sig = sign(sk_t_, view(pop_preimage(cnt_pop)));
  return pop;
}

void TeeState::wait_drained() {
  std::unique_lock<std::mutex> lock(mu_);
  drain_cv_.wait(lock, [this] { return stopping_ || (pending_.empty() && !export_in_flight_); });
}

void TeeState::set_export_paused(bool paused) {
  std::lock_guard<std::mutex> lock(mu_);
  export_paused_ = paused;
  export_cv_.notify_all();
}

void TeeState::notify_stop() {
  std::lock_guard<std::mutex> lock(mu_);
  stopping_ = true;
  submit_cv_.notify_all();
  export_cv_.notify_all();
  drain_cv_.notify_all();
}

uint64_t TeeState::cnt() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cnt_;
}

Hash32 TeeState::hc_t() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hc_t_;
}

uint64_t TeeState::processed_batches() const {
  std::lock_guard<std::mutex> lock(mu_);
  return processed_batches_;
}

size_t TeeState::pending_batches() const {
  std::lock_guard<std::mutex> lock(mu_);
  return pending_.size() + (export_in_flight_ ? 1 : 0);
}

size_t TeeState::buffered_items() const {
  std::lock_guard<std::mutex> lock(mu_);
  size_t total = 0;
  for (const auto& b : pending_) total += b.items.size();
  return total;
}

std::vector<HashChainEntry> TeeState::history_snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {history_.entries().begin(), history_.entries().end()};
}

}  // namespace spmt
