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

#include <random>

#include "doctest.h"

using namespace spmt;

namespace {
DataItem item_of(std::string_view payload) {
  DataItem item;
  item.payload = to_bytes(payload);
  return item;
}
}  // namespace

TEST_CASE("genesis is 32 zero bytes and the empty fold is the identity") {
  Hash32 genesis = chain_genesis();
  for (uint8_t b : genesis) CHECK(b == 0);
  CHECK(hash_chain_fold(genesis, {}) == genesis);
}

TEST_CASE("single step matches the frozen reference digest") {
  // Reference value computed with an independent SHA-256 implementation
  // over 04 | 32 zero bytes | u64be(1) | 'a'.
  Hash32 expected =
      hash32_from_hex("5887112ce0e3889cfc45a20ec970cf8adbfb97792751402e1d121752b5b2121b");
  CHECK(hash_chain_step(chain_genesis(), view(to_bytes("a"))) == expected);
}

TEST_CASE("two-step folds match the frozen reference digests and are order-sensitive") {
  Hash32 ab = hash32_from_hex("4dba21208037f5544494d99af2682ddfce687f8d317d75017365ea7795e60f07");
  Hash32 ba = hash32_from_hex("c05b9aab24fabfaf4d3acc849efb1004edca2b25da4e014a6158aded9b197db3");

  std::vector<DataItem> fwd = {item_of("a"), item_of("b")};
  std::vector<DataItem> rev = {item_of("b"), item_of("a")};
  CHECK(hash_chain_fold(chain_genesis(), fwd) == ab);
  CHECK(hash_chain_fold(chain_genesis(), rev) == ba);
  CHECK(ab != ba);

  // Brute-force check over every 2-element list drawn from a small alphabet.
  std::vector<std::string> alphabet = {"x", "y", "zz", ""};
  for (const auto& p : alphabet) {
    for (const auto& q : alphabet) {
      std::vector<DataItem> pq = {item_of(p), item_of(q)};
      std::vector<DataItem> qp = {item_of(q), item_of(p)};
      if (p == q)
        CHECK(hash_chain_fold(chain_genesis(), pq) == hash_chain_fold(chain_genesis(), qp));
      else
        CHECK(hash_chain_fold(chain_genesis(), pq) != hash_chain_fold(chain_genesis(), qp));
    }
  }
}

TEST_CASE("folding is deterministic and any adjacent transposition changes the value") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 30; ++round) {
    size_t n = 2 + rng() % 6;
    std::vector<DataItem> items;
    for (size_t i = 0; i < n; ++i) items.push_back(item_of("item-" + std::to_string(rng() % 64)));

    Hash32 once = hash_chain_fold(chain_genesis(), items);
    CHECK(hash_chain_fold(chain_genesis(), items) == once);

    size_t k = rng() % (n - 1);
    if (items[k] == items[k + 1]) continue;
    std::vector<DataItem> swapped = items;
    std::swap(swapped[k], swapped[k + 1]);
    CHECK(hash_chain_fold(chain_genesis(), swapped) != once);
  }
}

TEST_CASE("segmented folding equals whole folding for every split point") {
  std::mt19937_64 rng(7);
  std::vector<DataItem> items;
  for (int i = 0; i < 12; ++i) items.push_back(item_of("seg-" + std::to_string(rng())));
  Hash32 whole = hash_chain_fold(chain_genesis(), items);
  for (size_t split = 0; split <= items.size(); ++split) {
    Hash32 part = hash_chain_fold(chain_genesis(), std::span(items.data(), split));
    Hash32 rest = hash_chain_fold(part, std::span(items.data() + split, items.size() - split));
    CHECK(rest == whole);
  }
}
