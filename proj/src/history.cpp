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

#include "spmt/history.hpp"

#include <cmath>

namespace spmt {

HashChainHistory::HashChainHistory(size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ConfigError("history capacity must be positive");
}

void HashChainHistory::append(const HashChainEntry& entry) {
  if (!entries_.empty() && entry.cnt != entries_.back().cnt + 1)
    throw ProtocolError("history counters must be contiguous");
  if (index_.contains(entry.hc))
    throw ProtocolError("duplicate hash-chain value in history");
  entries_.push_back(entry);
  index_.emplace(entry.hc, entry.cnt);
  if (entries_.size() > capacity_) {
    index_.erase(entries_.front().hc);
    entries_.pop_front();
  }
}

std::optional<uint64_t> HashChainHistory::lookup(const Hash32& hc) const {
  auto it = index_.find(hc);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint64_t compute_history_capacity(double freq_tee, double freq_monitor) {
  if (!(freq_tee > 0.0) || !(freq_monitor > 0.0))
    throw ConfigError("frequencies must be positive");
  long double ratio = static_cast<long double>(freq_tee) / static_cast<long double>(freq_monitor);
  return static_cast<uint64_t>(std::ceil(ratio)) + 1;
}

}  // namespace spmt
