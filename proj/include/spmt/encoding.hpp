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

#include <variant>

#include "spmt/bytes.hpp"
#include "spmt/error.hpp"

namespace spmt {

// Domain-separated signing/hashing pre-images. Every signed or hashed byte
// string in the protocol is produced by canonical_encode, so distinct message
// kinds can never collide and every variable-length field is length-framed.
//
// Layouts (normative, bit-exact):
//   0x01 POR        = tag | len8(payload) | payload | u64be(cnt_por)
//                         | len8(report_bytes) | report_bytes
//   0x02 POP        = tag | u64be(cnt_pop)
//   0x03 checkpoint = tag | hc_m(32)
//   0x04 chain step = tag | hc_prev(32) | len8(payload) | payload
//   0x05 data item  = tag | len8(payload) | payload
//   0x06 report     = tag | measurement(32) | len8(pk_t) | pk_t
// len8 = 8-byte big-endian length prefix, u64be = 8-byte big-endian integer.
enum class Tag : uint8_t {
  por_preimage = 0x01,
  pop_preimage = 0x02,
  checkpoint_preimage = 0x03,
  chain_step_preimage = 0x04,
  item_preimage = 0x05,
  report_preimage = 0x06,
};

struct FieldU64 {
  uint64_t value;
};
struct FieldHash {
  Hash32 value;
};
struct FieldBytes {
  ByteView value;
};
using Field = std::variant<FieldU64, FieldHash, FieldBytes>;

// Injective by construction: field kinds per tag are fixed, integers are
// fixed-width, and byte fields carry explicit lengths. Throws EncodingError
// on an unknown tag or a field list that does not match the tag's schema.
Bytes canonical_encode(Tag tag, std::span<const Field> fields);
Bytes canonical_encode(Tag tag, std::initializer_list<Field> fields);

// Typed pre-image builders over canonical_encode.
Bytes por_preimage(ByteView payload, uint64_t cnt_por, ByteView report_bytes);
Bytes pop_preimage(uint64_t cnt_pop);
Bytes checkpoint_preimage(const Hash32& hc_m);
Bytes chain_step_preimage(const Hash32& hc_prev, ByteView payload);
Bytes item_preimage(ByteView payload);
Bytes report_preimage(const Hash32& measurement, ByteView tee_public_key_der);

// Low-level append helpers shared by the wire-message codecs.
void put_u8(Bytes& out, uint8_t v);
void put_u32be(Bytes& out, uint32_t v);
void put_u64be(Bytes& out, uint64_t v);
void put_fixed32(Bytes& out, const Hash32& v);
void put_len_prefixed(Bytes& out, ByteView data);

// Bounds-checked cursor over an untrusted byte buffer. All getters throw
// EncodingError on truncation or overlong length prefixes.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  uint8_t get_u8();
  uint32_t get_u32be();
  uint64_t get_u64be();
  Hash32 get_fixed32();
  Bytes get_len_prefixed();
  std::string get_len_prefixed_string();

  size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return remaining() == 0; }
  void require_end() const;

 private:
  void need(size_t n) const;
  ByteView data_;
  size_t pos_ = 0;
};

}  // namespace spmt
