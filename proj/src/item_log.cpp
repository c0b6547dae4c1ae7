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

#include "spmt/item_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cstring>
#include <fstream>
#include <set>

#include "spmt/encoding.hpp"
#include "spmt/error.hpp"

namespace spmt {

namespace {
constexpr char kMagic[8] = {'S', 'P', 'M', 'T', 'L', 'O', 'G', '1'};
}

ItemLog::ItemLog(const std::string& file_path) : file_path_(file_path) {
  replay_file();
  fd_ = ::open(file_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd_ < 0) throw ConfigError("cannot open item log: " + file_path_);
  if (entries_.empty() && committed_batches_ == 0) {
    off_t end = ::lseek(fd_, 0, SEEK_END);
    if (end == 0) {
      if (::write(fd_, kMagic, sizeof(kMagic)) != sizeof(kMagic))
        throw ConfigError("cannot write item log header");
    }
  }
}

ItemLog::~ItemLog() {
  if (fd_ >= 0) ::close(fd_);
}

bool ItemLog::has_batch(uint64_t batch_index) const {
  return stored_batches_.contains(batch_index);
}

bool ItemLog::append_batch(uint64_t batch_index, const std::vector<DataItem>& items) {
  if (has_batch(batch_index)) return false;
  uint32_t pos = 0;
  entries_.reserve(entries_.size() + items.size());
  for (const auto& item : items) entries_.push_back(Entry{batch_index, pos++, item});
  stored_batches_.insert(batch_index);
  while (stored_batches_.contains(committed_batches_)) ++committed_batches_;
  if (fd_ >= 0) persist_batch(batch_index, items);
  return true;
}

void ItemLog::persist_batch(uint64_t batch_index, const std::vector<DataItem>& items) {
  Bytes record;
  put_u64be(record, batch_index);
  put_u64be(record, items.size());
  for (const auto& item : items) put_len_prefixed(record, view(encode_data_item(item)));
  size_t off = 0;
  while (off < record.size()) {
    ssize_t n = ::write(fd_, record.data() + off, record.size() - off);
    if (n < 0) throw ConfigError("item log write failed: " + std::string(strerror(errno)));
    off += static_cast<size_t>(n);
  }
}

void ItemLog::replay_file() {
  std::ifstream in(file_path_, std::ios::binary);
  if (!in) return;  // fresh log
  Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.empty()) return;
  if (raw.size() < sizeof(kMagic) || std::memcmp(raw.data(), kMagic, sizeof(kMagic)) != 0)
    throw ConfigError("bad item log header: " + file_path_);
  ByteReader reader(ByteView(raw.data() + sizeof(kMagic), raw.size() - sizeof(kMagic)));
  while (!reader.at_end()) {
    uint64_t batch_index = reader.get_u64be();
    uint64_t count = reader.get_u64be();
    std::vector<DataItem> items;
    items.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
      Bytes item_raw = reader.get_len_prefixed();
      ByteReader item_reader(view(item_raw));
      items.push_back(decode_data_item(item_reader));
      item_reader.require_end();
    }
    uint32_t pos = 0;
    for (auto& item : items) entries_.push_back(Entry{batch_index, pos++, std::move(item)});
    stored_batches_.insert(batch_index);
    while (stored_batches_.contains(committed_batches_)) ++committed_batches_;
  }
}

void ItemLog::compact() {
  if (file_path_.empty()) return;
  std::string tmp = file_path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write snapshot: " + tmp);
    out.write(kMagic, sizeof(kMagic));
    // Regroup entries into their original batches.
    size_t i = 0;
    while (i < entries_.size()) {
      uint64_t batch = entries_[i].batch_index;
      std::vector<DataItem> items;
      while (i < entries_.size() && entries_[i].batch_index == batch)
        items.push_back(entries_[i++].item);
      Bytes record;
      put_u64be(record, batch);
      put_u64be(record, items.size());
      for (const auto& item : items) put_len_prefixed(record, view(encode_data_item(item)));
      out.write(reinterpret_cast<const char*>(record.data()),
                static_cast<std::streamsize>(record.size()));
    }
  }
  if (fd_ >= 0) ::close(fd_);
  if (::rename(tmp.c_str(), file_path_.c_str()) != 0)
    throw ConfigError("cannot replace item log: " + file_path_);
  fd_ = ::open(file_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
}

}  // namespace spmt
