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

#include <vector>

#include "spmt/frame.hpp"
#include "spmt/types.hpp"

namespace spmt {

// Error codes carried by SUBMIT_ERR / POP_ERR bodies.
enum class ErrorCode : uint8_t {
  signature_invalid = 0x01,
  unknown_source = 0x02,
  checkpoint_sig_invalid = 0x03,
  unknown_monitor = 0x04,
  malformed = 0x05,
  internal = 0x06,
};

const char* error_code_name(ErrorCode code);

struct DbStore {
  uint64_t batch_index = 0;
  std::vector<DataItem> items;
};

struct ReadRange {
  std::string requester_id;
  uint64_t from_position = 0;
  uint64_t max_items = 0;
};

struct RangeResult {
  uint64_t end_position = 0;
  std::vector<DataItem> items;
};

Bytes encode_db_store(const DbStore& store);
DbStore decode_db_store(ByteView body);

Bytes encode_db_ack(uint64_t batch_index);
uint64_t decode_db_ack(ByteView body);

Bytes encode_read_range(const ReadRange& req);
ReadRange decode_read_range(ByteView body);

Bytes encode_range_result(const RangeResult& result);
RangeResult decode_range_result(ByteView body);

Bytes encode_error(ErrorCode code);
ErrorCode decode_error(ByteView body);

Bytes encode_holds(bool holds);
bool decode_holds(ByteView body);

// Single-struct bodies reuse the protocol-core codecs end to end.
DataItem decode_data_item_body(ByteView body);
ProofOfReception decode_por_body(ByteView body);
ProofOfProcessing decode_pop_body(ByteView body);
MonitorCheckpoint decode_checkpoint_body(ByteView body);

}  // namespace spmt
