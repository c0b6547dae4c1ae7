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

#include "spmt/frame.hpp"

#include "spmt/encoding.hpp"
#include "spmt/error.hpp"

namespace spmt {

Bytes frame_bytes(uint8_t type, ByteView body) {
  Bytes out;
  out.reserve(5 + body.size());
  put_u32be(out, static_cast<uint32_t>(1 + body.size()));
  out.push_back(type);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

void write_frame(TcpConn& conn, uint8_t type, ByteView body) {
  conn.send_all(view(frame_bytes(type, body)));
}

std::optional<Frame> read_frame(TcpConn& conn) {
  uint8_t header[4];
  if (!conn.recv_exact(header, 4)) return std::nullopt;
  uint32_t len = static_cast<uint32_t>(header[0]) << 24 | static_cast<uint32_t>(header[1]) << 16 |
                 static_cast<uint32_t>(header[2]) << 8 | static_cast<uint32_t>(header[3]);
  if (len == 0 || len > kMaxFrameBody + 1) throw EncodingError("bad frame length");
  Frame frame;
  if (!conn.recv_exact(&frame.type, 1)) throw TransportError("peer closed mid-frame");
  frame.body.resize(len - 1);
  if (len > 1 && !conn.recv_exact(frame.body.data(), frame.body.size()))
    throw TransportError("peer closed mid-frame");
  return frame;
}

}  // namespace spmt
