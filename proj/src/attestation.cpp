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

#include "spmt/attestation.hpp"

namespace spmt {

AttestationReport AttestationAuthority::issue_report(const Hash32& measurement,
                                                     ByteView tee_public_key_der) const {
  AttestationReport report;
  report.measurement = measurement;
  report.tee_public_key_der.assign(tee_public_key_der.begin(), tee_public_key_der.end());
  report.authority_sig = sign(key_, view(report_preimage(measurement, tee_public_key_der)));
  return report;
}

bool verify_report(const AttestationReport& report, const PublicKey& apk,
                   const Hash32& expected_measurement) {
  if (report.measurement != expected_measurement) return false;
  Bytes preimage = report_preimage(report.measurement, view(report.tee_public_key_der));
  return verify(apk, view(preimage), view(report.authority_sig));
}

const Hash32& self_measurement() {
  static const Hash32 m = sha256(view(to_bytes("spmt-tee-code/1")));
  return m;
}

}  // namespace spmt
