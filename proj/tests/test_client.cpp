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

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace spmt;

namespace {

TopologyOptions small_topology() {
  TopologyOptions opts;
  opts.tee.batch_capacity = 4;
  opts.tee.flush_timeout = std::chrono::seconds(30);  // script-controlled batches
  opts.client_timeout = std::chrono::milliseconds(1500);
  return opts;
}

void roll(Topology& topo, std::mt19937_64& rng) { topo.roll_batch(rng, 16); }

}  // namespace

TEST_CASE("honest source round trip produces a locally verifiable package") {
  Topology topo(small_topology());
  std::mt19937_64 rng(21);
  HandoverPackage pkg = topo.submit(random_payload(rng, 64));
  CHECK(verify_handover(pkg, topo.client_context()) == Detail::ok);

  // certificate-sized payloads go through identically
  HandoverPackage big = topo.submit(random_payload(rng, 4900));
  CHECK(verify_handover(big, topo.client_context()) == Detail::ok);
}

TEST_CASE("submissions signed with an unregistered key are refused") {
  Topology topo(small_topology());
  DataSource stranger(PrivateKey::generate(), "stranger");
  auto result = stranger.submit(topo.tee_address(), to_bytes("hello"));
  REQUIRE(std::holds_alternative<ErrorCode>(result));
  CHECK(std::get<ErrorCode>(result) == ErrorCode::unknown_source);
}

TEST_CASE("handover verification rejects wrong measurement, rogue report and swapped items") {
  Topology topo(small_topology());
  std::mt19937_64 rng(22);
  HandoverPackage pkg = topo.submit(random_payload(rng, 32));

  ClientContext ctx = topo.client_context();
  CHECK(verify_handover(pkg, ctx) == Detail::ok);

  ClientContext wrong_em = ctx;
  wrong_em.expected_measurement = sha256(view(to_bytes("other build")));
  CHECK(verify_handover(pkg, wrong_em) == Detail::measurement_mismatch);

  ClientContext wrong_apk = ctx;
  wrong_apk.apk = PrivateKey::generate().public_key();
  CHECK(verify_handover(pkg, wrong_apk) == Detail::report_invalid);

  // POR presented with a different item
  HandoverPackage crossed = pkg;
  crossed.item = topo.source().make_item(random_payload(rng, 32));
  CHECK(verify_handover(crossed, ctx) == Detail::por_sig_invalid);

  HandoverPackage tampered = pkg;
  tampered.por.cnt_por ^= 1;
  CHECK(verify_handover(tampered, ctx) == Detail::por_sig_invalid);
}

TEST_CASE("membership accepts strictly below the covered batch and retries at it") {
  Topology topo(small_topology());
  std::mt19937_64 rng(23);

  HandoverPackage in_batch0 = topo.submit(random_payload(rng, 16));
  roll(topo, rng);  // completes batch 0
  HandoverPackage in_batch1 = topo.submit(random_payload(rng, 16));
  roll(topo, rng);  // completes batch 1
  topo.pull_monitor();

  // monitor synced through batch 1: its chain value carries counter 1
  MembershipVerdict v0 = topo.test_item(in_batch0);
  CHECK(v0.outcome == Outcome::accepted);
  CHECK(v0.cnt_por == 0);
  CHECK(v0.cnt_pop == 1);

  // the item in the newest synced batch sits at the boundary: wait
  MembershipVerdict v1 = topo.test_item(in_batch1);
  CHECK(v1.cnt_por == 1);
  CHECK(v1.cnt_pop == 1);
  CHECK(v1.outcome == Outcome::retry_later);
  CHECK(v1.detail == Detail::counter_not_advanced);

  // one more processed batch lifts it over the threshold
  roll(topo, rng);
  topo.pull_monitor();
  MembershipVerdict v2 = topo.test_item(in_batch1);
  CHECK(v2.cnt_por == 1);
  CHECK(v2.cnt_pop == 2);
  CHECK(v2.outcome == Outcome::accepted);
}

TEST_CASE("sentinel lookups can never satisfy the strict rule") {
  Topology topo(small_topology());
  std::mt19937_64 rng(24);
  HandoverPackage pkg = topo.submit(random_payload(rng, 16));  // batch 0, cnt_por = 0
  roll(topo, rng);

  // checkpoint over a value the server never recorded
  MonitorCheckpoint cp;
  cp.hc_m = sha256(view(to_bytes("some other database")));
  cp.monitor_sig = sign(topo.deployment().monitor_key, view(checkpoint_preimage(cp.hc_m)));
  cp.monitor_key_id = topo.deployment().monitor_key_id;

  MembershipVerdict v =
      membership_test_with_checkpoint(pkg, cp, topo.tee_address(), topo.client_context());
  CHECK(v.cnt_pop == 0);
  CHECK(v.outcome == Outcome::retry_later);  // 0 < 0 is unsatisfiable
}

TEST_CASE("invalid POP signatures and TEE errors map to rejected_server") {
  Topology topo(small_topology());
  std::mt19937_64 rng(25);
  HandoverPackage pkg = topo.submit(random_payload(rng, 16));
  roll(topo, rng);
  roll(topo, rng);
  topo.pull_monitor();

  // checkpoint from a rogue key: the server refuses, client blames server
  MonitorCheckpoint rogue;
  rogue.hc_m = topo.monitor().state().hc_m();
  rogue.monitor_sig = sign(PrivateKey::generate(), view(checkpoint_preimage(rogue.hc_m)));
  rogue.monitor_key_id = topo.deployment().monitor_key_id;
  MembershipVerdict v =
      membership_test_with_checkpoint(pkg, rogue, topo.tee_address(), topo.client_context());
  CHECK(v.outcome == Outcome::rejected_server);
  CHECK(v.detail == Detail::tee_error);

  // a POP that fails verification against the report's key
  HandoverPackage foreign = pkg;
  PrivateKey other_tee = PrivateKey::generate();
  AttestationAuthority authority(topo.deployment().authority_key);
  foreign.por.report =
      authority.issue_report(self_measurement(), view(other_tee.public_key().der()));
  foreign.por.tee_sig = sign(other_tee, view(por_preimage(view(foreign.item.payload), 0,
                                                          view(report_bytes(foreign.por.report)))));
  foreign.por.cnt_por = 0;
  MonitorCheckpoint good = topo.monitor().state().issue_checkpoint();
  MembershipVerdict v2 =
      membership_test_with_checkpoint(foreign, good, topo.tee_address(), topo.client_context());
  CHECK(v2.outcome == Outcome::rejected_server);
  CHECK(v2.detail == Detail::pop_sig_invalid);
}

TEST_CASE("transport failures surface as retry_later with distinct details") {
  Topology topo(small_topology());
  std::mt19937_64 rng(26);
  HandoverPackage pkg = topo.submit(random_payload(rng, 16));

  MembershipVerdict no_monitor = membership_test(pkg, "127.0.0.1:1", topo.tee_address(),
                                                 topo.client_context());
  CHECK(no_monitor.outcome == Outcome::retry_later);
  CHECK(no_monitor.detail == Detail::monitor_transport);

  MembershipVerdict no_tee =
      membership_test(pkg, topo.monitor_address(), "127.0.0.1:1", topo.client_context());
  CHECK(no_tee.outcome == Outcome::retry_later);
  CHECK(no_tee.detail == Detail::tee_transport);
}

TEST_CASE("the testing request is a function of the checkpoint alone") {
  Topology topo(small_topology());
  std::mt19937_64 rng(27);
  HandoverPackage d0 = topo.submit(random_payload(rng, 32));
  HandoverPackage d1 = topo.submit(random_payload(rng, 32));
  roll(topo, rng);
  roll(topo, rng);
  topo.pull_monitor();
  MonitorCheckpoint cp = topo.monitor().state().issue_checkpoint();

  // two distinct items, same checkpoint: byte-identical requests
  CHECK(testing_request_bytes(d0, cp) == testing_request_bytes(d1, cp));

  // same item, two checkpoints: requests differ only in checkpoint fields
  MonitorCheckpoint cp2 = topo.monitor().state().issue_checkpoint();
  Bytes r1 = testing_request_bytes(d0, cp);
  Bytes r2 = testing_request_bytes(d0, cp2);
  CHECK(r1 != r2);  // fresh signature nonce
  CHECK(testing_request_bytes(d0, cp2) == testing_request_bytes(d1, cp2));

  // no payload substring ever appears in the request bytes
  for (int trial = 0; trial < 1000; ++trial) {
    Bytes payload = random_payload(rng, 32);
    HandoverPackage probe = d0;
    probe.item.payload = payload;
    Bytes request = testing_request_bytes(probe, cp);
    auto it = std::search(request.begin(), request.end(), payload.begin(), payload.begin() + 8);
    CHECK(it == request.end());
  }
}

TEST_CASE("handover package and evidence bundle files round-trip") {
  Topology topo(small_topology());
  std::mt19937_64 rng(28);
  HandoverPackage pkg = topo.submit(random_payload(rng, 48));

  std::string path = (std::filesystem::temp_directory_path() / "spmt-test-pkg.bin").string();
  save_package(path, pkg);
  HandoverPackage loaded = load_package(path);
  CHECK(loaded.item == pkg.item);
  CHECK(loaded.por == pkg.por);
  CHECK(verify_handover(loaded, topo.client_context()) == Detail::ok);

  // magic is enforced
  Bytes raw = encode_package(pkg);
  raw[0] ^= 1;
  CHECK_THROWS_AS(decode_package(view(raw)), EncodingError);
  std::filesystem::remove(path);

  EvidenceBundle bundle{pkg, topo.monitor().state().issue_checkpoint()};
  std::string epath = (std::filesystem::temp_directory_path() / "spmt-test-ev.bin").string();
  save_evidence(epath, bundle);
  EvidenceBundle eloaded = load_evidence(epath);
  CHECK(eloaded.pkg.item == pkg.item);
  CHECK(eloaded.checkpoint == bundle.checkpoint);
  std::filesystem::remove(epath);
}
