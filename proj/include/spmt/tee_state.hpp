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
#include <variant>

#include "spmt/attestation.hpp"
#include "spmt/hash_chain.hpp"
#include "spmt/history.hpp"
#include "spmt/messages.hpp"
#include "spmt/registry.hpp"

namespace spmt {

struct TeeConfig {
  size_t batch_capacity = 32;      // n: items per exported batch
  size_t history_capacity = 1024;  // N: retained (chain value, counter) pairs
  std::chrono::milliseconds flush_timeout{1000};  // partial-batch flush
  // Blocking mode refuses new submissions while a batch export is in
  // flight, preserving the strict single-buffer discipline. The default
  // assigns submissions to queued batches and acknowledges immediately.
  bool blocking_submissions = false;
  size_t max_pending_batches = 4096;  // back-pressure bound for queued mode
};

struct BatchExport {
  uint64_t batch_index = 0;
  std::vector<DataItem> items;
};

// Protocol state machine of the simulated-TEE server. Thread-safe: any
// number of submission/POP callers may run concurrently; a single export
// worker drives next_batch/commit_batch.
class TeeState {
 public:
  TeeState(PrivateKey sk_t, AttestationReport report, KeyRegistry registry, TeeConfig cfg);

  // Algorithm: verify the source signature, append to the batch whose index
  // becomes cnt_por, and sign the POR. Errors: signature_invalid on a bad
  // source signature, unknown_source for an unregistered key id.
  std::variant<ProofOfReception, ErrorCode> handle_submission(const DataItem& item);

  // Bulk-population path for the harness: same batching and export pipeline,
  // but no source-signature check and no POR issuance.
  void append_preload(DataItem item);

  // Export worker side. next_batch blocks up to `wait` for a batch that is
  // full or flush-expired, marking it in flight. commit_batch is called once
  // the database acknowledged exactly this batch: it records (hc, cnt) in
  // the history and advances cnt exactly once.
  std::optional<BatchExport> next_batch(std::chrono::milliseconds wait);
  void commit_batch(const BatchExport& batch, const Hash32& new_hc);

  // Algorithm: verify the checkpoint signature, look the chain value up in
  // the history, and sign cnt_pop (0 when the lookup misses).
  std::variant<ProofOfProcessing, ErrorCode> handle_pop_request(const MonitorCheckpoint& cp);

  // Blocks until no batch is pending or in flight.
  void wait_drained();
  void notify_stop();  // unblocks next_batch/wait_drained/blocked submitters

  // While paused, next_batch hands out nothing (harness control simulating
  // a halted host).
  void set_export_paused(bool paused);

  uint64_t cnt() const;
  Hash32 hc_t() const;
  uint64_t processed_batches() const;
  size_t pending_batches() const;
  size_t buffered_items() const;
  std::vector<HashChainEntry> history_snapshot() const;
  const AttestationReport& report() const { return report_; }
  const Bytes& report_wire_bytes() const { return report_bytes_; }
  const TeeConfig& config() const { return cfg_; }
  PublicKey public_key() const { return sk_t_.public_key(); }

 private:
  struct PendingBatch {
    uint64_t index = 0;
    std::vector<DataItem> items;
    bool sealed = false;
    std::chrono::steady_clock::time_point first_append;
  };

  // Returns cnt_por, or nullopt when shutting down. Caller holds no lock.
  std::optional<uint64_t> assign_to_batch(DataItem item);
  bool front_ready(std::chrono::steady_clock::time_point now) const;

  const PrivateKey sk_t_;
  const AttestationReport report_;
  const Bytes report_bytes_;
  const KeyRegistry registry_;
  const TeeConfig cfg_;

  mutable std::mutex mu_;
  std::condition_variable submit_cv_;  // blocking mode + back-pressure
  std::condition_variable export_cv_;  // wakes the export worker
  std::condition_variable drain_cv_;
  uint64_t cnt_ = 0;
  uint64_t processed_batches_ = 0;
  Hash32 hc_t_ = chain_genesis();
  HashChainHistory history_;
  std::deque<PendingBatch> pending_;
  uint64_t next_batch_index_ = 0;
  bool export_in_flight_ = false;
  bool export_paused_ = false;
  bool stopping_ = false;

  // Single-entry cache of the last checkpoint that passed verification;
  // clients resend identical checkpoints at high rates.
  mutable std::mutex cp_cache_mu_;
  Hash32 cp_cache_key_{};
  bool cp_cache_valid_ = false;
};

}  // namespace spmt
