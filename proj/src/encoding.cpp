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

#include "spmt/encoding.hpp"

#include <algorithm>

namespace spmt {

namespace {

enum class FieldKind : uint8_t { u64, hash, bytes };

struct TagSchema {
  Tag tag;
  std::initializer_list<FieldKind> fields;
};

// One schema row per tag; canonical_encode rejects anything else.
constexpr FieldKind kU64 = FieldKind::u64;
constexpr FieldKind kHash = FieldKind::hash;
constexpr FieldKind kBytes = FieldKind::bytes;

const TagSchema kSchemas[] = {
    {Tag::por_preimage, {kBytes, kU64, kBytes}},
    {Tag::pop_preimage, {kU64}},
    {Tag::checkpoint_preimage, {kHash}},
    {Tag::chain_step_preimage, {kHash, kBytes}},
    {Tag::item_preimage, {kBytes}},
    {Tag::report_preimage, {kHash, kBytes}},
};

FieldKind kind_of(const Field& f) {
  if (std::holds_alternative<FieldU64>(f)) return FieldKind::u64;
  if (std::holds_alternative<FieldHash>(f)) return FieldKind::hash;
  return FieldKind::bytes;
}

}  // namespace

void put_u8(Bytes& out, uint8_t v) { out.push_back(v); }

void put_u32be(Bytes& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<uint8_t>(v >> shift));
}

void put_u64be(Bytes& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<uint8_t>(v >> shift));
}

void put_fixed32(Bytes& out, const Hash32& v) {
  out.insert(out.end(), v.begin(), v.end());
}

void put_len_prefixed(Bytes& out, ByteView data) {
  put_u64be(out, data.size());
  out.insert(out.end(), data.begin(), data.end());
}

Bytes canonical_encode(Tag tag, std::span<const Field> fields) {
  const TagSchema* schema = nullptr;
  for (const auto& s : kSchemas) {
    if (s.tag == tag) {
      schema = &s;
      break;
    }
  }
  if (schema == nullptr) throw EncodingError("unknown encoding tag");
  if (fields.size() != schema->fields.size())
    throw EncodingError("field count mismatch for encoding tag");

  Bytes out;
  out.push_back(static_cast<uint8_t>(tag));
  size_t i = 0;
  for (FieldKind expected : schema->fields) {
    const Field& f = fields[i++];
    if (kind_of(f) != expected) throw EncodingError("field kind mismatch for encoding tag");
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, FieldU64>) {
            put_u64be(out, v.value);
          } else if constexpr (std::is_same_v<T, FieldHash>) {
            put_fixed32(out, v.value);
          } else {
            put_len_prefixed(out, v.value);
          }
        },
        f);
  }
  return out;
}

Bytes canonical_encode(Tag tag, std::initializer_list<Field> fields) {
  return canonical_encode(tag, std::span<const Field>(fields.begin(), fields.size()));
}

Bytes por_preimage(ByteView payload, uint64_t cnt_por, ByteView report_bytes) {
  return canonical_encode(Tag::por_preimage,
                          {FieldBytes{payload}, FieldU64{cnt_por}, FieldBytes{report_bytes}});
}

Bytes pop_preimage(uint64_t cnt_pop) {
  return canonical_encode(Tag::pop_preimage, {FieldU64{cnt_pop}});
}

Bytes checkpoint_preimage(const Hash32& hc_m) {
  return canonical_encode(Tag::checkpoint_preimage, {FieldHash{hc_m}});
}

Bytes chain_step_preimage(const Hash32& hc_prev, ByteView payload) {
  return canonical_encode(Tag::chain_step_preimage, {FieldHash{hc_prev}, FieldBytes{payload}});
}

Bytes item_preimage(ByteView payload) {
  return canonical_encode(Tag::item_preimage, {FieldBytes{payload}});
}

Bytes report_preimage(const Hash32& measurement, ByteView tee_public_key_der) {
  return canonical_encode(Tag::report_preimage,
                          {FieldHash{measurement}, FieldBytes{tee_public_key_der}});
}

void ByteReader::need(size_t n) const {
  if (remaining() < n) throw EncodingError("truncated input");
}

uint8_t ByteReader::get_u8() {
  need(1);
  return data_[pos_++];
}

uint32_t ByteReader::get_u32be() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = v << 8 | data_[pos_++];
  return v;
}

uint64_t ByteReader::get_u64be() {
  need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | data_[pos_++];
  return v;
}

Hash32 ByteReader::get_fixed32() {
  need(32);
  Hash32 out;
  std::copy_n(data_.begin() + static_cast<ptrdiff_t>(pos_), 32, out.begin());
  pos_ += 32;
  return out;
}

Bytes ByteReader::get_len_prefixed() {
  uint64_t len = get_u64be();
  if (len > remaining()) throw EncodingError("length prefix exceeds input");
  Bytes out(data_.begin() + static_cast<ptrdiff_t>(pos_),
            data_.begin() + static_cast<ptrdiff_t>(pos_ + len));
  pos_ += len;
  return out;
}

std::string ByteReader::get_len_prefixed_string() {
  Bytes raw = get_len_prefixed();
  return std::string(raw.begin(), raw.end());
}

void ByteReader::require_end() const {
  if (!at_end()) throw EncodingError("trailing bytes after message");
}

}  // namespace spmt
