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

#include "spmt/messages.hpp"

namespace spmt {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::signature_invalid: return "SIGNATURE_INVALID";
    case ErrorCode::unknown_source: return "UNKNOWN_SOURCE";
    case ErrorCode::checkpoint_sig_invalid: return "CHECKPOINT_SIG_INVALID";
    case ErrorCode::unknown_monitor: return "UNKNOWN_MONITOR";
    case ErrorCode::malformed: return "MALFORMED";
    case ErrorCode::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Bytes encode_db_store(const DbStore& store) {
  Bytes out;
  put_u64be(out, store.batch_index);
  put_u64be(out, store.items.size());
  for (const auto& item : store.items) {
    Bytes raw = encode_data_item(item);
    out.insert(out.end(), raw.begin(), raw.end());
  }
  return out;
}

DbStore decode_db_store(ByteView body) {
  ByteReader in(body);
  DbStore store;
  store.batch_index = in.get_u64be();
  uint64_t count = in.get_u64be();
  store.items.reserve(count);
  for (uint64_t i = 0; i < count; ++i) store.items.push_back(decode_data_item(in));
  in.require_end();
  return store;
}

Bytes encode_db_ack(uint64_t batch_index) {
  Bytes out;
  put_u64be(out, batch_index);
  return out;
}

uint64_t decode_db_ack(ByteView body) {
  ByteReader in(body);
  uint64_t index = in.get_u64be();
  in.require_end();
  return index;
}

Bytes encode_read_range(const ReadRange& req) {
  Bytes out;
  put_len_prefixed(out, ByteView(reinterpret_cast<const uint8_t*>(req.requester_id.data()),
                                 req.requester_id.size()));
  put_u64be(out, req.from_position);
  put_u64be(out, req.max_items);
  return out;
}

ReadRange decode_read_range(ByteView body) {
  ByteReader in(body);
  ReadRange req;
  req.requester_id = in.get_len_prefixed_string();
  req.from_position = in.get_u64be();
  req.max_items = in.get_u64be();
  in.require_end();
  return req;
}

Bytes encode_range_result(const RangeResult& result) {
  Bytes out;
  put_u64be(out, result.end_position);
  put_u64be(out, result.items.size());
  for (const auto& item : result.items) {
    Bytes raw = encode_data_item(item);
    out.insert(out.end(), raw.begin(), raw.end());
  }
  return out;
}

RangeResult decode_range_result(ByteView body) {
  ByteReader in(body);
  RangeResult result;
  result.end_position = in.get_u64be();
  uint64_t count = in.get_u64be();
  result.items.reserve(count);
  for (uint64_t i = 0; i < count; ++i) result.items.push_back(decode_data_item(in));
  in.require_end();
  return result;
}

Bytes encode_error(ErrorCode code) { return Bytes{static_cast<uint8_t>(code)}; }

ErrorCode decode_error(ByteView body) {
  ByteReader in(body);
  auto code = static_cast<ErrorCode>(in.get_u8());
  in.require_end();
  return code;
}

Bytes encode_holds(bool holds) { return Bytes{holds ? uint8_t{1} : uint8_t{0}}; }

bool decode_holds(ByteView body) {
  ByteReader in(body);
  uint8_t v = in.get_u8();
  in.require_end();
  return v != 0;
}

DataItem decode_data_item_body(ByteView body) {
  ByteReader in(body);
  DataItem item = decode_data_item(in);
  in.require_end();
  return item;
}

ProofOfReception decode_por_body(ByteView body) {
  ByteReader in(body);
  ProofOfReception por = decode_por(in);
  in.require_end();
  return por;
}

ProofOfProcessing decode_pop_body(ByteView body) {
  ByteReader in(body);
  ProofOfProcessing pop = decode_pop(in);
  in.require_end();
  return pop;
}

MonitorCheckpoint decode_checkpoint_body(ByteView body) {
  ByteReader in(body);
  MonitorCheckpoint cp = decode_checkpoint(in);
  in.require_end();
  return cp;
}

}  // namespace spmt
