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

#include "spmt/history.hpp"

#include <random>

#include "doctest.h"
#include "spmt/crypto.hpp"

using namespace spmt;

namespace {
HashChainEntry entry(uint64_t cnt) {
  HashChainEntry e;
  e.hc = sha256(view(to_bytes("entry-" + std::to_string(cnt))));
  e.cnt = cnt;
  return e;
}
}  // namespace

TEST_CASE("history keeps the newest N entries, evicting the oldest only") {
  HashChainHistory history(3);
  for (uint64_t i = 0; i < 5; ++i) history.append(entry(i));
  CHECK(history.size() == 3);
  CHECK(history.entries().front().cnt == 2);
  CHECK(history.entries().back().cnt == 4);
  CHECK_FALSE(history.lookup(entry(0).hc).has_value());
  CHECK_FALSE(history.lookup(entry(1).hc).has_value());
  for (uint64_t i = 2; i < 5; ++i) {
    auto cnt = history.lookup(entry(i).hc);
    REQUIRE(cnt.has_value());
    CHECK(*cnt == i);
  }
}

TEST_CASE("history rejects gaps and duplicate chain values") {
  HashChainHistory history(8);
  history.append(entry(0));
  CHECK_THROWS_AS(history.append(entry(2)), ProtocolError);
  HashChainEntry dup = entry(1);
  dup.hc = entry(0).hc;
  CHECK_THROWS_AS(history.append(dup), ProtocolError);
  CHECK_THROWS_AS(HashChainHistory(0), ConfigError);
}

TEST_CASE("capacity formula on the worked examples") {
  CHECK(compute_history_capacity(5, 5) == 2);     // equal rates
  CHECK(compute_history_capacity(10, 3) == 5);    // ceil(10/3)+1
  CHECK(compute_history_capacity(1, 4) == 2);     // ceil(1/4)+1
  CHECK_THROWS_AS(compute_history_capacity(0, 1), ConfigError);
  CHECK_THROWS_AS(compute_history_capacity(1, 0), ConfigError);
  CHECK_THROWS_AS(compute_history_capacity(-2, 3), ConfigError);
}

TEST_CASE("capacity formula agrees with exact rational arithmetic") {
  // Frequencies are dyadic rationals (exactly representable in double);
  // the oracle computes ceil over the integer rational directly.
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    uint64_t num_t = 1 + rng() % 10000;
    uint64_t num_m = 1 + rng() % 10000;
    uint64_t shift_t = rng() % 4;
    uint64_t shift_m = rng() % 4;
    double freq_t = static_cast<double>(num_t) / static_cast<double>(1u << shift_t);
    double freq_m = static_cast<double>(num_m) / static_cast<double>(1u << shift_m);

    // ratio = (num_t * 2^shift_m) / (num_m * 2^shift_t)
    unsigned __int128 numerator = static_cast<unsigned __int128>(num_t) << shift_m;
    unsigned __int128 denominator = static_cast<unsigned __int128>(num_m) << shift_t;
    uint64_t expected = static_cast<uint64_t>((numerator + denominator - 1) / denominator) + 1;

    CHECK(compute_history_capacity(freq_t, freq_m) == expected);
  }
}
