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

#include "spmt/crypto.hpp"
#include "spmt/types.hpp"

namespace spmt {

// Iterated-hash accumulator folding the whole item history into one 32-byte
// value. Equal values imply equal histories under collision resistance.
// The chain starts from a fixed public genesis of 32 zero bytes; the value
// is a consistency tag, not a secret, so any agreed constant works.

constexpr Hash32 chain_genesis() { return Hash32{}; }

// Next chain value: SHA-256 over the tag-0x04 pre-image (previous value
// first, then the length-framed payload).
Hash32 hash_chain_step(const Hash32& hc_prev, const DataItem& item);
Hash32 hash_chain_step(const Hash32& hc_prev, ByteView payload);

// Fold a whole item sequence, in order, from `from`.
Hash32 hash_chain_fold(const Hash32& from, std::span<const DataItem> items);

}  // namespace spmt
