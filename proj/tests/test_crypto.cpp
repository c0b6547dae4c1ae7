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

#include "spmt/crypto.hpp"

#include <filesystem>

#include "doctest.h"
#include "spmt/attestation.hpp"
#include "spmt/registry.hpp"

using namespace spmt;

TEST_CASE("sign/verify round trip, including the empty message") {
  PrivateKey key = PrivateKey::generate();
  PublicKey pub = key.public_key();

  Bytes empty;
  CHECK(verify(pub, view(empty), view(sign(key, view(empty)))));

  Bytes msg = to_bytes("progress over proofs");
  Bytes sig = sign(key, view(msg));
  CHECK(verify(pub, view(msg), view(sig)));

  PublicKey other = PrivateKey::generate().public_key();
  CHECK_FALSE(verify(other, view(msg), view(sig)));
}

TEST_CASE("verification fails for every single-bit flip of a short message") {
  PrivateKey key = PrivateKey::generate();
  PublicKey pub = key.public_key();
  Bytes msg = to_bytes("abc");
  Bytes sig = sign(key, view(msg));
  for (size_t byte = 0; byte < msg.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      Bytes mutated = msg;
      mutated[byte] ^= uint8_t(1u << bit);
      CHECK_FALSE(verify(pub, view(mutated), view(sig)));
    }
  }
}

TEST_CASE("malformed keys and signatures verify to false, never abort") {
  PrivateKey key = PrivateKey::generate();
  Bytes msg = to_bytes("x");
  Bytes sig = sign(key, view(msg));

  Bytes garbage_sig = {0x30, 0x02, 0x01, 0x00};
  CHECK_FALSE(verify(key.public_key(), view(msg), view(garbage_sig)));
  CHECK_FALSE(verify(key.public_key(), view(msg), {}));
  CHECK_FALSE(verify(PublicKey(), view(msg), view(sig)));

  Bytes garbage_der = to_bytes("not a key");
  CHECK_FALSE(PublicKey::try_from_der(view(garbage_der)).has_value());
  CHECK_THROWS_AS(PublicKey::from_der(view(garbage_der)), CryptoError);
}

TEST_CASE("public key DER round trip") {
  PrivateKey key = PrivateKey::generate();
  PublicKey pub = key.public_key();
  PublicKey reparsed = PublicKey::from_der(view(pub.der()));
  Bytes msg = to_bytes("der");
  CHECK(verify(reparsed, view(msg), view(sign(key, view(msg)))));
}

TEST_CASE("PEM file round trip") {
  std::string path =
      (std::filesystem::temp_directory_path() / "spmt-test-key.pem").string();
  PrivateKey key = PrivateKey::generate();
  key.to_pem_file(path);
  PrivateKey loaded = PrivateKey::from_pem_file(path);
  std::filesystem::remove(path);
  Bytes msg = to_bytes("pem");
  CHECK(verify(key.public_key(), view(msg), view(sign(loaded, view(msg)))));
}

TEST_CASE("report issue/verify: round trip, wrong measurement, rogue authority") {
  PrivateKey authority_key = PrivateKey::generate();
  AttestationAuthority authority(authority_key);
  PublicKey apk = authority.public_key();

  PrivateKey tee_key = PrivateKey::generate();
  Hash32 measurement = sha256(view(to_bytes("code")));
  AttestationReport report = authority.issue_report(measurement, view(tee_key.public_key().der()));

  CHECK(verify_report(report, apk, measurement));

  Hash32 other_measurement = sha256(view(to_bytes("other code")));
  CHECK_FALSE(verify_report(report, apk, other_measurement));

  AttestationAuthority rogue(PrivateKey::generate());
  AttestationReport forged = rogue.issue_report(measurement, view(tee_key.public_key().der()));
  CHECK_FALSE(verify_report(forged, apk, measurement));

  // Any mutation of the bound key invalidates the report.
  AttestationReport tampered = report;
  tampered.tee_public_key_der[10] ^= 1;
  CHECK_FALSE(verify_report(tampered, apk, measurement));
}

TEST_CASE("registry lookups fail explicitly for unknown ids") {
  KeyRegistry reg;
  reg.apk = PrivateKey::generate().public_key();
  reg.data_source_keys["ds-1"] = PrivateKey::generate().public_key();
  CHECK(reg.find_data_source("ds-1") != nullptr);
  CHECK(reg.find_data_source("ds-2") == nullptr);
  CHECK(reg.find_monitor("monitor-1") == nullptr);
}

TEST_CASE("registry json round trip") {
  std::string path =
      (std::filesystem::temp_directory_path() / "spmt-test-registry.json").string();
  KeyRegistry reg;
  reg.apk = PrivateKey::generate().public_key();
  reg.expected_measurement = sha256(view(to_bytes("m")));
  reg.data_source_keys["ds-1"] = PrivateKey::generate().public_key();
  reg.monitor_keys["monitor-1"] = PrivateKey::generate().public_key();
  reg.save_json(path);
  KeyRegistry loaded = KeyRegistry::load_json(path);
  std::filesystem::remove(path);
  CHECK(loaded.apk.der() == reg.apk.der());
  CHECK(loaded.expected_measurement == reg.expected_measurement);
  REQUIRE(loaded.find_data_source("ds-1") != nullptr);
  CHECK(loaded.find_data_source("ds-1")->der() == reg.data_source_keys["ds-1"].der());
  REQUIRE(loaded.find_monitor("monitor-1") != nullptr);
}

TEST_CASE("hex helpers") {
  Bytes raw = {0x00, 0xff, 0x10};
  CHECK(to_hex(view(raw)) == "00ff10");
  CHECK(from_hex("00ff10") == raw);
  CHECK_THROWS_AS(from_hex("0g"), std::invalid_argument);
  CHECK_THROWS_AS(from_hex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(hash32_from_hex("aa"), std::invalid_argument);
}
