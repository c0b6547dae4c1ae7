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

#include "spmt/hash_chain.hpp"

namespace spmt {

Hash32 hash_chain_step(const Hash32& hc_prev, ByteView payload) {
  return sha256(view(chain_step_preimage(hc_prev, payload)));
}

Hash32 hash_chain_step(const Hash32& hc_prev, const DataItem& item) {
  return hash_chain_step(hc_prev, view(item.payload));
}

Hash32 hash_chain_fold(const Hash32& from, std::span<const DataItem> items) {
  Hash32 hc = from;
  for (const auto& item : items) hc = hash_chain_step(hc, item);
  return hc;
}

}  // namespace spmt
