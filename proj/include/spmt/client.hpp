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

#include "spmt/attestation.hpp"
#include "spmt/handover.hpp"
#include "spmt/messages.hpp"

namespace spmt {

// Trust anchors the client obtained out of band.
struct ClientContext {
  PublicKey apk;
  Hash32 expected_measurement{};
  std::chrono::milliseconds timeout{5000};
};

enum class Outcome : uint8_t {
  accepted,         // every check passed and cnt_por < cnt_pop
  rejected_source,  // handover verification failed: the data source lied
  rejected_server,  // POP path failed: the server misbehaved
  retry_later,      // counter not advanced yet, or transport trouble
};

enum class Detail : uint8_t {
  ok,
  report_invalid,
  measurement_mismatch,
  por_sig_invalid,
  pop_sig_invalid,
  tee_error,
  counter_not_advanced,
  monitor_transport,
  tee_transport,
  malformed_reply,
};

const char* outcome_name(Outcome outcome);
const char* detail_name(Detail detail);

struct MembershipVerdict {
  Outcome outcome = Outcome::retry_later;
  Detail detail = Detail::ok;
  uint64_t cnt_por = 0;
  uint64_t cnt_pop = 0;

  bool accepted() const { return outcome == Outcome::accepted; }
};

// Exact outbound frames, for the privacy transcripts.
struct TranscriptRecorder {
  std::vector<Bytes> to_monitor;
  std::vector<Bytes> to_tee;
};

// Handover checks, in order: the report verifies under APK; the measurement
// equals the expected value; the POR signature verifies under the key from
// the report over this package's own payload and counter. Returns Detail::ok
// or the first failure (all map to rejected_source).
Detail verify_handover(const HandoverPackage& pkg, const ClientContext& ctx);

// The exact bytes sent to the server during a membership test. A function
// of the checkpoint alone: the package parameter is deliberately unused, so
// the request can never depend on the item under test.
Bytes testing_request_bytes(const HandoverPackage& pkg, const MonitorCheckpoint& checkpoint);

// Fetch the monitor's current signed checkpoint; nullopt on transport
// failure or malformed reply.
std::optional<MonitorCheckpoint> fetch_checkpoint(
    const std::string& monitor_address, const ClientContext& ctx,
    TranscriptRecorder* recorder = nullptr);

// POP round trip plus the counter rule against a caller-supplied checkpoint.
// Assumes verify_handover already returned ok for this package.
MembershipVerdict membership_test_with_checkpoint(const HandoverPackage& pkg,
                                                  const MonitorCheckpoint& checkpoint,
                                                  const std::string& tee_address,
                                                  const ClientContext& ctx,
                                                  TranscriptRecorder* recorder = nullptr);
// Same, over an already-open server connection (bench path).
MembershipVerdict membership_test_on(TcpConn& tee_conn, const HandoverPackage& pkg,
                                     const MonitorCheckpoint& checkpoint,
                                     TranscriptRecorder* recorder = nullptr);

// Full flow: checkpoint from the monitor, then the POP exchange.
MembershipVerdict membership_test(const HandoverPackage& pkg, const std::string& monitor_address,
                                  const std::string& tee_address, const ClientContext& ctx,
                                  TranscriptRecorder* recorder = nullptr);

}  // namespace spmt
