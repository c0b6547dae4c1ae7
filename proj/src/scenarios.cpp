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

#include "spmt/scenarios.hpp"

#include <filesystem>
#include <functional>
#include <sstream>
#include <unistd.h>

#include "spmt/bench.hpp"
#include "spmt/interposer.hpp"
#include "spmt/topology.hpp"

namespace spmt {

namespace {

constexpr size_t kBatch = 4;  // small batches keep scripted runs quick

TopologyOptions scripted_options(const std::string& adversary = "honest") {
  TopologyOptions opts;
  opts.tee.batch_capacity = kBatch;
  // Long flush so batch composition is fully script-controlled.
  opts.tee.flush_timeout = std::chrono::seconds(30);
  opts.adversary = AdversaryMode::parse(adversary);
  opts.client_timeout = std::chrono::milliseconds(700);
  return opts;
}

struct Run {
  std::string observed;
  bool pass = false;
  std::string detail;
};

std::mt19937_64 seeded(const std::string& name, uint64_t seed) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : name) h = (h ^ static_cast<uint8_t>(c)) * 0x100000001b3ull;
  return std::mt19937_64(h ^ (seed * 0x9e3779b97f4a7c15ull + 1));
}

// Retry loop modeling a client that tests again later; the monitor re-pulls
// between attempts. Every acceptance is also held against the no-false-accept
// meta-property: an accepted item must be in the database view or at least in
// the monitor's possession.
struct Attempts {
  bool accepted = false;
  bool possession_ok = true;
};

Attempts ever_accepts(Topology& topo, const HandoverPackage& pkg, const std::string& tee_address,
                      int attempts, std::string* last = nullptr) {
  Attempts out;
  for (int i = 0; i < attempts; ++i) {
    topo.pull_monitor();
    Detail handover = verify_handover(pkg, topo.client_context());
    if (handover != Detail::ok) {
      if (last != nullptr) *last = detail_name(handover);
      continue;
    }
    MembershipVerdict v =
        membership_test(pkg, topo.monitor_address(), tee_address, topo.client_context());
    if (last != nullptr) *last = detail_name(v.detail);
    if (v.accepted()) {
      out.accepted = true;
      bool possessed = topo.monitor().state().holds_item(view(pkg.item.payload)) ||
                       topo.db().contains_payload(view(pkg.item.payload));
      if (!possessed) {
        out.possession_ok = false;
        if (last != nullptr) *last = "accepted_without_possession";
      }
      return out;
    }
  }
  return out;
}

std::string temp_path(const std::string& stem, uint64_t seed) {
  return (std::filesystem::temp_directory_path() /
          (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(seed) + ".bin"))
      .string();
}

// ---------------------------------------------------------------------------
// message-layer attacks

Run run_tamper_messages(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("tamper_messages", seed);

  // Phase 1: flip a byte of the POR signature on its way back to the source.
  std::vector<InterposeRule> submit_rules;
  if (!control) {
    InterposeRule tamper;
    tamper.dir = LinkDir::to_client;
    tamper.type = msg::kSubmitOk;
    tamper.action = InterposeRule::Action::tamper;
    tamper.offset = 12;  // inside the signature bytes
    submit_rules.push_back(tamper);
  }
  Interposer submit_proxy(topo.tee_address(), submit_rules);
  submit_proxy.start();

  auto submitted = topo.source().submit(submit_proxy.address(), random_payload(rng, 48));
  auto* pkg1 = std::get_if<HandoverPackage>(&submitted);
  if (pkg1 == nullptr) return {"failed", false, "submission failed"};
  Detail handover = verify_handover(*pkg1, topo.client_context());

  // Phase 2: flip the low counter byte of the POP on its way to the client.
  HandoverPackage pkg2 = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  std::vector<InterposeRule> pop_rules;
  if (!control) {
    InterposeRule tamper;
    tamper.dir = LinkDir::to_client;
    tamper.type = msg::kPopOk;
    tamper.action = InterposeRule::Action::tamper;
    tamper.offset = -1;  // cnt_pop is the last body byte
    tamper.repeat = true;
    pop_rules.push_back(tamper);
  }
  Interposer pop_proxy(topo.tee_address(), pop_rules);
  pop_proxy.start();
  MembershipVerdict v =
      membership_test(pkg2, topo.monitor_address(), pop_proxy.address(), topo.client_context());

  if (control) {
    run.pass = handover == Detail::ok && v.accepted();
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = detail_name(v.detail);
    return run;
  }
  bool por_detected = handover == Detail::por_sig_invalid;
  bool pop_detected = v.outcome == Outcome::rejected_server && v.detail == Detail::pop_sig_invalid;
  run.pass = por_detected && pop_detected;
  run.observed = run.pass ? "detected" : "failed";
  run.detail = std::string("por=") + detail_name(handover) + " pop=" + detail_name(v.detail);
  return run;
}

Run run_drop_messages(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("drop_messages", seed);

  HandoverPackage pkg = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  std::vector<InterposeRule> rules;
  if (!control) {
    InterposeRule drop;
    drop.dir = LinkDir::to_client;
    drop.type = msg::kPopOk;
    drop.action = InterposeRule::Action::drop;
    drop.repeat = true;
    rules.push_back(drop);
  }
  Interposer proxy(topo.tee_address(), rules);
  proxy.start();

  std::string last;
  Attempts attempts = ever_accepts(topo, pkg, proxy.address(), 3, &last);
  if (control) {
    run.pass = attempts.accepted && attempts.possession_ok;
    run.observed = run.pass ? "accepted" : "failed";
  } else {
    run.pass = !attempts.accepted;
    run.observed = run.pass ? "never_accepts" : "failed";
  }
  run.detail = last;
  return run;
}

Run run_delay_swap_por(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("delay_swap_por", seed);

  // A delayed response is harmless on its own; the attack is pairing an old
  // POR with a newer item.
  std::vector<InterposeRule> rules;
  if (!control) {
    InterposeRule delay;
    delay.dir = LinkDir::to_client;
    delay.type = msg::kSubmitOk;
    delay.action = InterposeRule::Action::delay;
    delay.delay = std::chrono::milliseconds(60);
    rules.push_back(delay);
  }
  Interposer proxy(topo.tee_address(), rules);
  proxy.start();

  auto first = topo.source().submit(proxy.address(), random_payload(rng, 48));
  auto* d1 = std::get_if<HandoverPackage>(&first);
  if (d1 == nullptr) return {"failed", false, "first submission failed"};
  topo.roll_batch(rng);
  HandoverPackage d2 = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  if (control) {
    Detail handover = verify_handover(d2, topo.client_context());
    MembershipVerdict v =
        membership_test(d2, topo.monitor_address(), topo.tee_address(), topo.client_context());
    run.pass = handover == Detail::ok && v.accepted();
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = detail_name(v.detail);
    return run;
  }

  HandoverPackage swapped{d2.item, d1->por};  // older POR presented for newer item
  Detail handover = verify_handover(swapped, topo.client_context());
  run.pass = handover == Detail::por_sig_invalid;
  run.observed = run.pass ? "detected" : "failed";
  run.detail = detail_name(handover);
  return run;
}

Run run_replay_por_other_item(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("replay_por_other_item", seed);

  HandoverPackage old_pkg = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  Bytes target_payload = random_payload(rng, 48);
  if (control) {
    HandoverPackage pkg = topo.submit(target_payload);
    topo.roll_batch(rng);
    topo.roll_batch(rng);
    topo.pull_monitor();
    Detail handover = verify_handover(pkg, topo.client_context());
    MembershipVerdict v =
        membership_test(pkg, topo.monitor_address(), topo.tee_address(), topo.client_context());
    run.pass = handover == Detail::ok && v.accepted();
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = detail_name(v.detail);
    return run;
  }

  // The target item is never submitted; the source reuses an old POR.
  HandoverPackage forged{topo.source().make_item(target_payload), old_pkg.por};
  Detail handover = verify_handover(forged, topo.client_context());
  run.pass = handover == Detail::por_sig_invalid;
  run.observed = run.pass ? "detected" : "failed";
  run.detail = detail_name(handover);
  return run;
}

Run run_replay_submission_same_item(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("replay_submission_same_item", seed);

  Bytes payload = random_payload(rng, 48);
  HandoverPackage early = topo.submit(payload);  // batch 0
  topo.roll_batch(rng);
  HandoverPackage late = topo.submit(payload);  // identical resubmission, batch 1
  topo.roll_batch(rng);
  // Monitor covers batches 0 and 1: the early POR is acceptable while the
  // late one still is not.
  topo.pull_monitor(2 * kBatch);

  const HandoverPackage& offered = early;  // adversary offers the older POR
  Detail handover = verify_handover(offered, topo.client_context());
  MembershipVerdict v =
      membership_test(offered, topo.monitor_address(), topo.tee_address(), topo.client_context());
  bool stored = topo.db().contains_payload(view(payload));

  run.pass = handover == Detail::ok && v.accepted() && stored;
  if (control) {
    run.observed = run.pass ? "accepted" : "failed";
  } else {
    run.observed = run.pass ? "harmless_accept" : "failed";
  }
  std::ostringstream detail;
  detail << "early_cnt=" << early.por.cnt_por << " late_cnt=" << late.por.cnt_por
         << " stored=" << stored;
  run.detail = detail.str();
  return run;
}

Run run_replay_pop(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("replay_pop", seed);

  std::vector<InterposeRule> rules;
  if (!control) {
    InterposeRule capture;
    capture.dir = LinkDir::to_client;
    capture.type = msg::kPopOk;
    capture.action = InterposeRule::Action::capture;
    capture.slot = "old-pop";
    rules.push_back(capture);
    InterposeRule replay;
    replay.dir = LinkDir::to_client;
    replay.type = msg::kPopOk;
    replay.nth = 1;
    replay.repeat = true;
    replay.action = InterposeRule::Action::replay;
    replay.slot = "old-pop";
    rules.push_back(replay);
  }
  Interposer proxy(topo.tee_address(), rules);
  proxy.start();

  // Phase 1: an accepted test whose POP the adversary captures.
  HandoverPackage warm = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();
  MembershipVerdict warm_verdict =
      membership_test(warm, topo.monitor_address(), proxy.address(), topo.client_context());
  if (!warm_verdict.accepted()) return {"failed", false, "warm-up test did not accept"};

  // Phase 2: a fresh target; every later POP gets replaced by the captured
  // one, whose counter cannot exceed the target's reception counter.
  HandoverPackage target = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  std::string last;
  Attempts attempts = ever_accepts(topo, target, proxy.address(), 3, &last);
  if (control) {
    run.pass = attempts.accepted && attempts.possession_ok;
    run.observed = run.pass ? "accepted" : "failed";
  } else {
    run.pass = !attempts.accepted;
    run.observed = run.pass ? "never_accepts" : "failed";
  }
  run.detail = last;
  return run;
}

// ---------------------------------------------------------------------------
// server/TEE attacks

Run run_interrupt_tee(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("interrupt_tee", seed);

  topo.roll_batch(rng);
  topo.pull_monitor();

  if (!control) topo.tee().pause_export(true);  // the host halts the server's progress
  HandoverPackage target = topo.submit(random_payload(rng, 48));
  if (control) {
    topo.roll_batch(rng);
    topo.roll_batch(rng);
  }

  std::string last;
  Attempts attempts = ever_accepts(topo, target, topo.tee_address(), 3, &last);
  if (control) {
    run.pass = attempts.accepted && attempts.possession_ok;
    run.observed = run.pass ? "accepted" : "failed";
  } else {
    run.pass = !attempts.accepted && topo.tee().state().cnt() == 1;
    run.observed = run.pass ? "never_accepts" : "failed";
    topo.tee().pause_export(false);
  }
  run.detail = last + " cnt=" + std::to_string(topo.tee().state().cnt());
  return run;
}

Run run_impersonate_tee(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("impersonate_tee", seed);

  if (control) {
    HandoverPackage pkg = topo.submit(random_payload(rng, 48));
    topo.roll_batch(rng);
    topo.roll_batch(rng);
    topo.pull_monitor();
    Detail handover = verify_handover(pkg, topo.client_context());
    MembershipVerdict v =
        membership_test(pkg, topo.monitor_address(), topo.tee_address(), topo.client_context());
    run.pass = handover == Detail::ok && v.accepted();
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = detail_name(v.detail);
    return run;
  }

  Bytes payload = random_payload(rng, 48);
  DataItem item = topo.source().make_item(payload);

  // A fake platform: report signed by a key that is not the pinned APK.
  PrivateKey rogue_tee = PrivateKey::generate();
  AttestationAuthority rogue_authority(PrivateKey::generate());
  AttestationReport rogue_report =
      rogue_authority.issue_report(self_measurement(), view(rogue_tee.public_key().der()));
  ProofOfReception rogue_por;
  rogue_por.cnt_por = 0;
  rogue_por.report = rogue_report;
  rogue_por.tee_sig =
      sign(rogue_tee, view(por_preimage(view(payload), 0, view(report_bytes(rogue_report)))));
  Detail fake_platform = verify_handover(HandoverPackage{item, rogue_por}, topo.client_context());

  // A genuine platform running different code: valid authority signature,
  // wrong measurement.
  AttestationAuthority real_authority(topo.deployment().authority_key);
  AttestationReport wrong_code = real_authority.issue_report(
      sha256(view(to_bytes("unexpected-code"))), view(rogue_tee.public_key().der()));
  ProofOfReception wrong_por;
  wrong_por.cnt_por = 0;
  wrong_por.report = wrong_code;
  wrong_por.tee_sig =
      sign(rogue_tee, view(por_preimage(view(payload), 0, view(report_bytes(wrong_code)))));
  Detail wrong_measurement =
      verify_handover(HandoverPackage{item, wrong_por}, topo.client_context());

  run.pass =
      fake_platform == Detail::report_invalid && wrong_measurement == Detail::measurement_mismatch;
  run.observed = run.pass ? "detected" : "failed";
  run.detail = std::string("fake=") + detail_name(fake_platform) +
               " wrong_code=" + detail_name(wrong_measurement);
  return run;
}

// ---------------------------------------------------------------------------
// database attacks

Run run_impersonate_monitor(uint64_t seed, bool control) {
  Run run;
  Topology topo(scripted_options());
  auto rng = seeded("impersonate_monitor", seed);

  HandoverPackage pkg = topo.submit(random_payload(rng, 48));
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  if (control) {
    MembershipVerdict v =
        membership_test(pkg, topo.monitor_address(), topo.tee_address(), topo.client_context());
    run.pass = v.accepted();
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = detail_name(v.detail);
    return run;
  }

  // Registered identity, wrong key.
  PrivateKey rogue = PrivateKey::generate();
  MonitorCheckpoint forged;
  forged.hc_m = topo.monitor().state().hc_m();
  forged.monitor_sig = sign(rogue, view(checkpoint_preimage(forged.hc_m)));
  forged.monitor_key_id = topo.deployment().monitor_key_id;
  MembershipVerdict bad_sig = membership_test_with_checkpoint(
      pkg, forged, topo.tee_address(), topo.client_context());

  // Unregistered identity.
  forged.monitor_key_id = "intruder";
  forged.monitor_sig = sign(rogue, view(checkpoint_preimage(forged.hc_m)));
  MembershipVerdict unknown = membership_test_with_checkpoint(
      pkg, forged, topo.tee_address(), topo.client_context());

  run.pass = bad_sig.outcome == Outcome::rejected_server &&
             unknown.outcome == Outcome::rejected_server;
  run.observed = run.pass ? "detected" : "failed";
  run.detail = std::string("bad_sig=") + detail_name(bad_sig.detail) +
               " unknown=" + detail_name(unknown.detail);
  return run;
}

Run drop_from_database_variant(const std::string& adversary, uint64_t seed, bool control,
                               bool write_evidence) {
  Run run;
  Topology topo(scripted_options(control ? "honest" : adversary));
  auto rng = seeded("drop_batch_forge_ack" + adversary, seed);

  topo.roll_batch(rng);                                     // batch 0
  HandoverPackage target = topo.submit(random_payload(rng, 48));  // batch 1
  topo.roll_batch(rng);
  topo.roll_batch(rng);  // batch 2
  topo.pull_monitor();

  std::string last;
  Attempts attempts = ever_accepts(topo, target, topo.tee_address(), 3, &last);
  if (control) {
    run.pass = attempts.accepted && attempts.possession_ok;
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = last;
    return run;
  }

  // The server acknowledged every batch, so its counter advanced past the
  // target; the monitor's view diverged instead.
  bool counter_advanced = topo.tee().state().cnt() == 3;
  bool monitor_lacks_item = !topo.monitor().state().holds_item(view(target.item.payload));

  bool evidence_ok = true;
  if (write_evidence) {
    // The publicize path: the client hands any monitor a self-verifying
    // bundle showing a valid POR for an item the database never served.
    auto checkpoint = fetch_checkpoint(topo.monitor_address(), topo.client_context());
    std::string path = temp_path("spmt-evidence", seed);
    save_evidence(path, EvidenceBundle{target, *checkpoint});
    EvidenceBundle loaded = load_evidence(path);
    std::filesystem::remove(path);
    evidence_ok = verify_handover(loaded.pkg, topo.client_context()) == Detail::ok &&
                  !topo.monitor().state().holds_item(view(loaded.pkg.item.payload));
  }

  run.pass = !attempts.accepted && counter_advanced && monitor_lacks_item && evidence_ok;
  run.observed = run.pass ? "never_accepts" : "failed";
  std::ostringstream detail;
  detail << last << " cnt=" << topo.tee().state().cnt()
         << " monitor_lacks=" << monitor_lacks_item << " evidence_ok=" << evidence_ok;
  run.detail = detail.str();
  return run;
}

Run run_drop_batch_forge_ack(uint64_t seed, bool control) {
  // Covers the whole "drop from database" family: the full buffer, then a
  // single item out of it.
  Run whole = drop_from_database_variant("drop_batch:1", seed, control, true);
  if (!whole.pass || control) return whole;
  Run single = drop_from_database_variant("drop_item:1:0", seed, control, false);
  if (!single.pass) {
    single.detail = "drop_item variant: " + single.detail;
    return single;
  }
  whole.detail += " | drop_item: " + single.detail;
  return whole;
}

Run run_fork_db(uint64_t seed, bool control) {
  Run run;
  // The requester id contains ':', so build the assignment in code rather
  // than through the string form.
  AdversaryMode mode;
  mode.kind = AdversaryMode::Kind::fork;
  mode.batch = 1;
  mode.view_assignment["monitor:monitor-1"] = 'B';

  TopologyOptions opts = scripted_options();
  if (!control) opts.adversary = mode;
  Topology topo(opts);
  auto rng = seeded("fork_db", seed);

  topo.roll_batch(rng);                                     // batch 0
  HandoverPackage target = topo.submit(random_payload(rng, 48));  // batch 1
  topo.roll_batch(rng);
  topo.roll_batch(rng);  // batch 2
  topo.pull_monitor();

  std::string last;
  Attempts attempts = ever_accepts(topo, target, topo.tee_address(), 3, &last);
  if (control) {
    run.pass = attempts.accepted && attempts.possession_ok;
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = last;
    return run;
  }

  // Split view: the primary view holds the item, the monitor's view lacks it.
  bool split = topo.db().contains_payload(view(target.item.payload)) &&
               !topo.monitor().state().holds_item(view(target.item.payload));
  run.pass = !attempts.accepted && split;
  run.observed = run.pass ? "never_accepts" : "failed";
  run.detail = last + " split_view=" + std::to_string(split);
  return run;
}

Run run_drop_after_monitor(uint64_t seed, bool control) {
  Run run;
  TopologyOptions opts = scripted_options(control ? "honest" : "drop_after_monitor:1");
  Topology topo(opts);
  auto rng = seeded("drop_after_monitor", seed);

  topo.roll_batch(rng);                                     // batch 0
  HandoverPackage target = topo.submit(random_payload(rng, 48));  // batch 1
  topo.roll_batch(rng);
  topo.roll_batch(rng);  // batch 2
  topo.pull_monitor();   // this download covers batch 1 and arms the drop

  Detail handover = verify_handover(target, topo.client_context());
  MembershipVerdict v =
      membership_test(target, topo.monitor_address(), topo.tee_address(), topo.client_context());

  if (control) {
    run.pass = handover == Detail::ok && v.accepted();
    run.observed = run.pass ? "accepted" : "failed";
    run.detail = detail_name(v.detail);
    return run;
  }

  bool monitor_has_item = topo.monitor().state().holds_item(view(target.item.payload));
  bool db_dropped = !topo.db().contains_payload(view(target.item.payload)) &&
                    topo.db().drop_triggered();
  run.pass = handover == Detail::ok && v.accepted() && monitor_has_item && db_dropped;
  run.observed = run.pass ? "evidence_at_monitor" : "failed";
  std::ostringstream detail;
  detail << detail_name(v.detail) << " monitor_has=" << monitor_has_item
         << " db_dropped=" << db_dropped;
  run.detail = detail.str();
  return run;
}

using ScenarioFn = std::function<Run(uint64_t, bool)>;

const std::vector<std::pair<Scenario, ScenarioFn>>& scenario_table() {
  static const std::vector<std::pair<Scenario, ScenarioFn>> table = {
      {{"tamper_messages", "message", "flip bytes of proofs in flight",
        Expectation::detected},
       run_tamper_messages},
      {{"drop_messages", "message", "swallow responses on the client link",
        Expectation::never_accepts},
       run_drop_messages},
      {{"delay_swap_por", "message", "delay responses and pair an old POR with a newer item",
        Expectation::detected},
       run_delay_swap_por},
      {{"replay_por_other_item", "message", "reuse a POR issued for a different item",
        Expectation::detected},
       run_replay_por_other_item},
      {{"replay_submission_same_item", "message",
        "resubmit the same signed item and offer the older POR", Expectation::harmless_accept},
       run_replay_submission_same_item},
      {{"replay_pop", "message", "answer POP requests with a captured older POP",
        Expectation::never_accepts},
       run_replay_pop},
      {{"interrupt_tee", "tee", "halt the server's export progress",
        Expectation::never_accepts},
       run_interrupt_tee},
      {{"impersonate_tee", "tee", "forge proofs with keys outside a valid report",
        Expectation::detected},
       run_impersonate_tee},
      {{"impersonate_monitor", "database", "serve checkpoints under a rogue monitor key",
        Expectation::detected},
       run_impersonate_monitor},
      {{"drop_batch_forge_ack", "database",
        "discard a buffer or single item, acknowledge anyway", Expectation::never_accepts},
       run_drop_batch_forge_ack},
      {{"fork_db", "database", "show the monitor a view missing the target batch",
        Expectation::never_accepts},
       run_fork_db},
      {{"drop_after_monitor", "database", "hide an item after the monitor downloaded it",
        Expectation::evidence_at_monitor},
       run_drop_after_monitor},
  };
  return table;
}

}  // namespace

const char* expectation_name(Expectation e) {
  switch (e) {
    case Expectation::detected: return "detected";
    case Expectation::never_accepts: return "never_accepts";
    case Expectation::harmless_accept: return "harmless_accept";
    case Expectation::evidence_at_monitor: return "evidence_at_monitor";
  }
  return "unknown";
}

const std::vector<Scenario>& scenario_catalog() {
  static const std::vector<Scenario> catalog = [] {
    std::vector<Scenario> out;
    for (const auto& [scenario, fn] : scenario_table()) out.push_back(scenario);
    return out;
  }();
  return catalog;
}

ScenarioReport run_scenario(const std::string& name, uint64_t seed, bool control) {
  ScenarioReport report;
  report.name = name;
  report.seed = seed;
  report.control = control;
  for (const auto& [scenario, fn] : scenario_table()) {
    if (scenario.name != name) continue;
    report.expected = control ? "accepted" : expectation_name(scenario.expected);
    Run run;
    try {
      run = fn(seed, control);
    } catch (const std::exception& e) {
      run.observed = "infrastructure_error";
      run.pass = false;
      run.detail = e.what();
    }
    report.observed = run.observed;
    report.pass = run.pass;
    report.detail = run.detail;
    return report;
  }
  report.expected = "known scenario";
  report.observed = "unknown scenario";
  report.pass = false;
  return report;
}

std::string junit_xml(const std::vector<ScenarioReport>& reports) {
  size_t failures = 0;
  for (const auto& r : reports)
    if (!r.pass) ++failures;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<testsuite name=\"attack-scenarios\" tests=\"" << reports.size() << "\" failures=\""
      << failures << "\">\n";
  for (const auto& r : reports) {
    out << "  <testcase name=\"" << r.name << ".seed" << r.seed << (r.control ? ".control" : "")
        << "\"";
    if (r.pass) {
      out << "/>\n";
    } else {
      out << ">\n    <failure message=\"expected " << r.expected << ", observed " << r.observed
          << "\">" << r.detail << "</failure>\n  </testcase>\n";
    }
  }
  out << "</testsuite>\n";
  return out.str();
}

}  // namespace spmt
