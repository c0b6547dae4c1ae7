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

#include <deque>
#include <optional>
#include <unordered_map>

#include "spmt/error.hpp"
#include "spmt/types.hpp"

namespace spmt {

// Bounded record of recent (chain value, counter) pairs, the server's master
// record of processed batches. Holds at most `capacity` entries; eviction
// removes the oldest only. Counters must arrive contiguously.
class HashChainHistory {
 public:
  explicit HashChainHistory(size_t capacity);

  void append(const HashChainEntry& entry);
  std::optional<uint64_t> lookup(const Hash32& hc) const;

  size_t size() const { return entries_.size(); }
  size_t capacity() const { return capacity_; }
  const std::deque<HashChainEntry>& entries() const { return entries_; }

 private:
  size_t capacity_;
  std::deque<HashChainEntry> entries_;
  std::unordered_map<Hash32, uint64_t, Hash32Hasher> index_;
};

// Required history depth for given batch and monitor-pull frequencies:
// ceil(freq_tee / freq_monitor) + 1. Throws ConfigError on non-positive
// frequencies.
uint64_t compute_history_capacity(double freq_tee, double freq_monitor);

}  // namespace spmt
