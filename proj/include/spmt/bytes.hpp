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

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace spmt {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;
using Hash32 = std::array<uint8_t, 32>;

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline ByteView view(const Bytes& b) { return ByteView(b.data(), b.size()); }
inline ByteView view(const Hash32& h) { return ByteView(h.data(), h.size()); }

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument on bad input
Hash32 hash32_from_hex(std::string_view hex);

struct Hash32Hasher {
  size_t operator()(const Hash32& h) const noexcept {
    size_t v;
    static_assert(sizeof(v) <= sizeof(Hash32));
    __builtin_memcpy(&v, h.data(), sizeof(v));
    return v;
  }
};

// Deterministic payload generator for harness runs.
inline Bytes random_payload(std::mt19937_64& rng, size_t len) {
  Bytes out(len);
  for (auto& b : out) b = static_cast<uint8_t>(rng());
  return out;
}

}  // namespace spmt
