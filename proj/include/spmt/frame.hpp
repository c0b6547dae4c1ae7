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

#include "spmt/socket.hpp"

namespace spmt {

// Wire framing: u32be length | type byte | body, where length = 1 + |body|.
namespace msg {
constexpr uint8_t kSubmit = 0x10;
constexpr uint8_t kSubmitOk = 0x11;
constexpr uint8_t kSubmitErr = 0x1F;
constexpr uint8_t kPopReq = 0x20;
constexpr uint8_t kPopOk = 0x21;
constexpr uint8_t kPopErr = 0x2F;
constexpr uint8_t kDbStore = 0x30;
constexpr uint8_t kDbAck = 0x31;
constexpr uint8_t kReadRange = 0x40;
constexpr uint8_t kRange = 0x41;
constexpr uint8_t kCheckpointReq = 0x50;
constexpr uint8_t kCheckpoint = 0x51;
constexpr uint8_t kHoldsReq = 0x52;
constexpr uint8_t kHolds = 0x53;
}  // namespace msg

constexpr size_t kMaxFrameBody = 64u << 20;

struct Frame {
  uint8_t type = 0;
  Bytes body;
};

Bytes frame_bytes(uint8_t type, ByteView body);
void write_frame(TcpConn& conn, uint8_t type, ByteView body);

// nullopt on clean EOF; throws TransportError on socket errors and
// EncodingError on oversized/garbled lengths.
std::optional<Frame> read_frame(TcpConn& conn);

}  // namespace spmt
