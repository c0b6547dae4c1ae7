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

#include "spmt/client.hpp"

namespace spmt {

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::accepted: return "accepted";
    case Outcome::rejected_source: return "rejected_source";
    case Outcome::rejected_server: return "rejected_server";
    case Outcome::retry_later: return "retry_later";
  }
  return "unknown";
}

const char* detail_name(Detail detail) {
  switch (detail) {
    case Detail::ok: return "ok";
    case Detail::report_invalid: return "report_invalid";
    case Detail::measurement_mismatch: return "measurement_mismatch";
    case Detail::por_sig_invalid: return "por_sig_invalid";
    case Detail::pop_sig_invalid: return "pop_sig_invalid";
    case Detail::tee_error: return "tee_error";
    case Detail::counter_not_advanced: return "counter_not_advanced";
    case Detail::monitor_transport: return "monitor_transport";
    case Detail::tee_transport: return "tee_transport";
    case Detail::malformed_reply: return "malformed_reply";
  }
  return "unknown";
}

Detail verify_handover(const HandoverPackage& pkg, const ClientContext& ctx) {
  const AttestationReport& report = pkg.por.report;
  Bytes report_pre = report_preimage(report.measurement, view(report.tee_public_key_der));
  if (!verify(ctx.apk, view(report_pre), view(report.authority_sig)))
    return Detail::report_invalid;
  if (report.measurement != ctx.expected_measurement) return Detail::measurement_mismatch;

  auto tee_key = PublicKey::try_from_der(view(report.tee_public_key_der));
  if (!tee_key) return Detail::report_invalid;

  // Rebuilding the pre-image from this package's own payload makes the
  // signature check also the payload-binding check: a POR minted for any
  // other item cannot verify here.
  Bytes por_pre =
      por_preimage(view(pkg.item.payload), pkg.por.cnt_por, view(report_bytes(report)));
  if (!verify(*tee_key, view(por_pre), view(pkg.por.tee_sig))) return Detail::por_sig_invalid;
  return Detail::ok;
}

Bytes testing_request_bytes(const HandoverPackage& pkg, const MonitorCheckpoint& checkpoint) {
  (void)pkg;  // the request must not depend on the item under test
  return frame_bytes(msg::kPopReq, view(encode_checkpoint(checkpoint)));
}

std::optional<MonitorCheckpoint> fetch_checkpoint(const std::string& monitor_address,
                                                  const ClientContext& ctx,
                                                  TranscriptRecorder* recorder) {
  try {
    TcpConn conn = TcpConn::connect(monitor_address, ctx.timeout);
    Bytes request = frame_bytes(msg::kCheckpointReq, {});
    if (recorder != nullptr) recorder->to_monitor.push_back(request);
    conn.send_all(view(request));
    auto frame = read_frame(conn);
    if (!frame || frame->type != msg::kCheckpoint) return std::nullopt;
    return decode_checkpoint_body(view(frame->body));
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

MembershipVerdict pop_exchange(TcpConn& tee_conn, const HandoverPackage& pkg,
                               const MonitorCheckpoint& checkpoint,
                               TranscriptRecorder* recorder) {
  MembershipVerdict verdict;
  verdict.cnt_por = pkg.por.cnt_por;

  Bytes request = testing_request_bytes(pkg, checkpoint);
  if (recorder != nullptr) recorder->to_tee.push_back(request);

  std::optional<Frame> frame;
  try {
    tee_conn.send_all(view(request));
    frame = read_frame(tee_conn);
  } catch (const Error&) {
    verdict.outcome = Outcome::retry_later;
    verdict.detail = Detail::tee_transport;
    return verdict;
  }
  if (!frame) {
    verdict.outcome = Outcome::retry_later;
    verdict.detail = Detail::tee_transport;
    return verdict;
  }
  if (frame->type == msg::kPopErr) {
    verdict.outcome = Outcome::rejected_server;
    verdict.detail = Detail::tee_error;
    return verdict;
  }
  if (frame->type != msg::kPopOk) {
    verdict.outcome = Outcome::rejected_server;
    verdict.detail = Detail::malformed_reply;
    return verdict;
  }

  ProofOfProcessing pop;
  try {
    pop = decode_pop_body(view(frame->body));
  } catch (const EncodingError&) {
    verdict.outcome = Outcome::rejected_server;
    verdict.detail = Detail::malformed_reply;
    return verdict;
  }
  verdict.cnt_pop = pop.cnt_pop;

  auto tee_key = PublicKey::try_from_der(view(pkg.por.report.tee_public_key_der));
  if (!tee_key || !verify(*tee_key, view(pop_preimage(pop.cnt_pop)), view(pop.tee_sig))) {
    verdict.outcome = Outcome::rejected_server;
    verdict.detail = Detail::pop_sig_invalid;
    return verdict;
  }

  // The progress rule. Strict inequality keeps the cnt_pop = 0 sentinel
  // unsatisfiable, at the cost of one batch of acceptance lag.
  if (pkg.por.cnt_por < pop.cnt_pop) {
    verdict.outcome = Outcome::accepted;
    verdict.detail = Detail::ok;
  } else {
    verdict.outcome = Outcome::retry_later;
    verdict.detail = Detail::counter_not_advanced;
  }
  return verdict;
}

}  // namespace

MembershipVerdict membership_test_on(TcpConn& tee_conn, const HandoverPackage& pkg,
                                     const MonitorCheckpoint& checkpoint,
                                     TranscriptRecorder* recorder) {
  return pop_exchange(tee_conn, pkg, checkpoint, recorder);
}

MembershipVerdict membership_test_with_checkpoint(const HandoverPackage& pkg,
                                                  const MonitorCheckpoint& checkpoint,
                                                  const std::string& tee_address,
                                                  const ClientContext& ctx,
                                                  TranscriptRecorder* recorder) {
  MembershipVerdict verdict;
  verdict.cnt_por = pkg.por.cnt_por;
  try {
    TcpConn conn = TcpConn::connect(tee_address, ctx.timeout);
    return pop_exchange(conn, pkg, checkpoint, recorder);
  } catch (const Error&) {
    verdict.outcome = Outcome::retry_later;
    verdict.detail = Detail::tee_transport;
    return verdict;
  }
}

MembershipVerdict membership_test(const HandoverPackage& pkg, const std::string& monitor_address,
                                  const std::string& tee_address, const ClientContext& ctx,
                                  TranscriptRecorder* recorder) {
  auto checkpoint = fetch_checkpoint(monitor_address, ctx, recorder);
  if (!checkpoint) {
    MembershipVerdict verdict;
    verdict.cnt_por = pkg.por.cnt_por;
    verdict.outcome = Outcome::retry_later;
    verdict.detail = Detail::monitor_transport;
    return verdict;
  }
  return membership_test_with_checkpoint(pkg, *checkpoint, tee_address, ctx, recorder);
}

}  // namespace spmt
