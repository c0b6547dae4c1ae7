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

#include <filesystem>
#include <random>

#include "doctest.h"
#include "spmt/db_service.hpp"

using namespace spmt;

namespace {

std::vector<DataItem> make_batch(std::mt19937_64& rng, size_t n) {
  std::vector<DataItem> items;
  for (size_t i = 0; i < n; ++i) {
    DataItem item;
    item.payload = random_payload(rng, 16);
    item.source_key_id = "ds-1";
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<Bytes> all_payloads(const DatabaseService& db, const std::string& requester) {
  std::vector<Bytes> out;
  uint64_t pos = 0;
  while (true) {
    RangeResult r = db.read_range(requester, pos, 7);
    if (r.items.empty()) break;
    for (auto& item : r.items) out.push_back(item.payload);
    pos = r.end_position;
  }
  return out;
}

}  // namespace

TEST_CASE("honest mode appends, commits and acks exactly once") {
  std::mt19937_64 rng(1);
  DatabaseService db({});
  auto b0 = make_batch(rng, 32);
  auto b1 = make_batch(rng, 32);
  db.store_batch(0, b0);
  db.store_batch(1, b1);
  CHECK(db.item_count() == 64);
  CHECK(db.committed_batches() == 2);
  CHECK(db.acks_sent_for(0) == 1);
  CHECK(db.acks_sent_for(1) == 1);

  RangeResult r = db.read_range("monitor:m", 0, 100);
  CHECK(r.items.size() == 64);
  CHECK(r.end_position == 64);
  CHECK(r.items[0].payload == b0[0].payload);

  // retried store of a committed batch: idempotent, one more ack
  db.store_batch(0, b0);
  CHECK(db.item_count() == 64);
  CHECK(db.acks_sent_for(0) == 2);
}

TEST_CASE("earlier reads are a prefix of later reads in honest mode") {
  std::mt19937_64 rng(2);
  DatabaseService db({});
  std::vector<Bytes> before;
  for (uint64_t i = 0; i < 6; ++i) {
    db.store_batch(i, make_batch(rng, 5));
    auto now = all_payloads(db, "monitor:m");
    REQUIRE(now.size() >= before.size());
    for (size_t k = 0; k < before.size(); ++k) CHECK(now[k] == before[k]);
    before = std::move(now);
  }
}

TEST_CASE("out-of-range reads return empty with the current end position") {
  DatabaseService db({});
  std::mt19937_64 rng(3);
  db.store_batch(0, make_batch(rng, 4));
  RangeResult r = db.read_range("anyone", 99, 10);
  CHECK(r.items.empty());
  CHECK(r.end_position == 4);
}

TEST_CASE("drop_batch discards the batch but still acknowledges it") {
  std::mt19937_64 rng(4);
  DatabaseService::Options opts;
  opts.adversary = AdversaryMode::parse("drop_batch:0");
  DatabaseService db(opts);
  std::vector<uint64_t> acks;
  db.store_batch(0, make_batch(rng, 32), &acks);
  CHECK(db.item_count() == 0);
  REQUIRE(acks.size() == 1);
  CHECK(acks[0] == 0);
  db.store_batch(1, make_batch(rng, 32));
  CHECK(db.item_count() == 32);
}

TEST_CASE("drop_item removes one position from one batch") {
  std::mt19937_64 rng(5);
  DatabaseService::Options opts;
  opts.adversary = AdversaryMode::parse("drop_item:1:2");
  DatabaseService db(opts);
  auto b0 = make_batch(rng, 4);
  auto b1 = make_batch(rng, 4);
  db.store_batch(0, b0);
  db.store_batch(1, b1);
  CHECK(db.item_count() == 7);
  CHECK_FALSE(db.contains_payload(view(b1[2].payload)));
  CHECK(db.contains_payload(view(b1[3].payload)));
}

TEST_CASE("forge_ack_flood sprays deterministic spurious acks around the real one") {
  std::mt19937_64 rng(6);
  DatabaseService::Options opts;
  opts.adversary = AdversaryMode::parse("forge_ack_flood:10");
  DatabaseService db(opts);
  std::vector<uint64_t> acks;
  db.store_batch(3, make_batch(rng, 2), &acks);
  CHECK(acks.size() == 11);
  CHECK(std::count(acks.begin(), acks.end(), 3) >= 1);
  CHECK(db.item_count() == 2);  // flood does not affect storage
}

TEST_CASE("fork keeps two internally consistent views") {
  std::mt19937_64 rng(7);
  AdversaryMode mode;
  mode.kind = AdversaryMode::Kind::fork;
  mode.batch = 1;
  mode.view_assignment["monitor:m"] = 'B';
  DatabaseService::Options opts;
  opts.adversary = mode;
  DatabaseService db(opts);

  auto b0 = make_batch(rng, 3);
  auto b1 = make_batch(rng, 3);
  auto b2 = make_batch(rng, 3);
  db.store_batch(0, b0);
  db.store_batch(1, b1);
  db.store_batch(2, b2);

  auto view_a = all_payloads(db, "client");
  auto view_b = all_payloads(db, "monitor:m");
  CHECK(view_a.size() == 9);
  CHECK(view_b.size() == 6);  // batch 1 missing
  CHECK(view_b[0] == b0[0].payload);
  CHECK(view_b[3] == b2[0].payload);
}

TEST_CASE("drop_after_monitor hides the batch only after a covering monitor pull") {
  std::mt19937_64 rng(8);
  DatabaseService::Options opts;
  opts.adversary = AdversaryMode::parse("drop_after_monitor:1");
  DatabaseService db(opts);
  auto b0 = make_batch(rng, 3);
  auto b1 = make_batch(rng, 3);
  db.store_batch(0, b0);
  db.store_batch(1, b1);

  // a non-monitor read does not arm the drop
  CHECK(all_payloads(db, "client").size() == 6);
  CHECK_FALSE(db.drop_triggered());

  // the covering monitor pull sees everything, then the batch disappears
  auto first_pull = all_payloads(db, "monitor:m");
  CHECK(first_pull.size() == 6);
  CHECK(db.drop_triggered());
  auto second_pull = all_payloads(db, "monitor:m");
  CHECK(second_pull.size() == 3);
  CHECK_FALSE(db.contains_payload(view(b1[0].payload)));
}

TEST_CASE("append log persists batches across restarts") {
  std::mt19937_64 rng(9);
  std::string path = (std::filesystem::temp_directory_path() / "spmt-test-db.log").string();
  std::filesystem::remove(path);

  auto b0 = make_batch(rng, 4);
  auto b1 = make_batch(rng, 4);
  {
    DatabaseService::Options opts;
    opts.log_file = path;
    DatabaseService db(opts);
    db.store_batch(0, b0);
    db.store_batch(1, b1);
    db.compact();
  }
  {
    DatabaseService::Options opts;
    opts.log_file = path;
    DatabaseService db(opts);
    CHECK(db.item_count() == 8);
    CHECK(db.committed_batches() == 2);
    auto payloads = all_payloads(db, "monitor:m");
    REQUIRE(payloads.size() == 8);
    CHECK(payloads[0] == b0[0].payload);
    CHECK(payloads[7] == b1[3].payload);
  }
  std::filesystem::remove(path);
}

TEST_CASE("adversary mode strings parse and print") {
  CHECK(AdversaryMode::parse("honest").honest());
  CHECK(AdversaryMode::parse("drop_batch:7").batch == 7);
  auto di = AdversaryMode::parse("drop_item:3:2");
  CHECK(di.batch == 3);
  CHECK(di.position == 2);
  CHECK(AdversaryMode::parse("forge_ack_flood:55").spurious_acks_per_store == 55);
  CHECK(AdversaryMode::parse("drop_after_monitor:4").batch == 4);
  auto fork = AdversaryMode::parse("fork:2:mon=B,other=A");
  CHECK(fork.batch == 2);
  CHECK(fork.view_assignment.at("mon") == 'B');
  CHECK(fork.view_assignment.at("other") == 'A');
  CHECK_THROWS_AS(AdversaryMode::parse("meltdown"), ConfigError);
  CHECK_THROWS_AS(AdversaryMode::parse("drop_batch"), ConfigError);
  CHECK(AdversaryMode::parse(AdversaryMode::parse("drop_item:3:2").to_string()).position == 2);
}
