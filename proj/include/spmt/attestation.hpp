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

// Stand-in for real attestation infrastructure: a plain signing authority
// whose public key (APK) verifiers pin out of band. Reports bind a code
// measurement to a server signing key; nothing enclave-specific is modeled.
class AttestationAuthority {
 public:
  explicit AttestationAuthority(PrivateKey key) : key_(std::move(key)) {}

  AttestationReport issue_report(const Hash32& measurement, ByteView tee_public_key_der) const;

  PublicKey public_key() const { return key_.public_key(); }
  const PrivateKey& key() const { return key_; }

 private:
  PrivateKey key_;
};

// True iff authority_sig verifies under apk over the tag-0x06 pre-image and
// the measurement equals the expected value.
bool verify_report(const AttestationReport& report, const PublicKey& apk,
                   const Hash32& expected_measurement);

// The simulated code-integrity measurement this build reports for itself.
const Hash32& self_measurement();

}  // namespace spmt
