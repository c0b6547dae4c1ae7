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

#include <optional>
#include <set>
#include <vector>

#include "spmt/types.hpp"

namespace spmt {

// Append-only item store of the database host. Entries are kept in commit
// order; read positions index this order. Optional single-file persistence:
// every committed batch is appended to the log file and replayed on open.
class ItemLog {
 public:
  ItemLog() = default;
  // Opens (and replays) the file if it exists, creates it otherwise.
  explicit ItemLog(const std::string& file_path);
  ~ItemLog();

  struct Entry {
    uint64_t batch_index = 0;
    uint32_t pos_in_batch = 0;
    DataItem item;
  };

  // Appends one committed batch. Returns false (and stores nothing) if this
  // batch index was already committed, so retried stores stay idempotent.
  bool append_batch(uint64_t batch_index, const std::vector<DataItem>& items);

  const std::vector<Entry>& entries() const { return entries_; }
  uint64_t size() const { return entries_.size(); }
  uint64_t committed_batches() const { return committed_batches_; }
  bool has_batch(uint64_t batch_index) const;

  // Rewrites the persistent log to exactly the current state.
  void compact();

 private:
  void persist_batch(uint64_t batch_index, const std::vector<DataItem>& items);
  void replay_file();

  std::vector<Entry> entries_;
  std::set<uint64_t> stored_batches_;
  uint64_t committed_batches_ = 0;
  std::string file_path_;
  int fd_ = -1;
};

}  // namespace spmt
