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

#include <string>

#include "spmt/bytes.hpp"
#include "spmt/encoding.hpp"

namespace spmt {

// An opaque byte payload plus the data source's signature over the tag-0x05
// pre-image. The thing whose membership gets tested.
struct DataItem {
  Bytes payload;
  Bytes source_sig;
  std::string source_key_id;

  bool operator==(const DataItem&) const = default;
};

// Authority-signed statement binding a code measurement to the server
// signing key pk_T. The only channel through which clients learn pk_T.
struct AttestationReport {
  Hash32 measurement{};
  Bytes tee_public_key_der;
  Bytes authority_sig;

  bool operator==(const AttestationReport&) const = default;
};

// Server signature binding one data item to the batch counter at reception.
struct ProofOfReception {
  Bytes tee_sig;
  uint64_t cnt_por = 0;
  AttestationReport report;

  bool operator==(const ProofOfReception&) const = default;
};

// Server signature over the counter looked up for a monitor checkpoint.
// cnt_pop = 0 doubles as the "no matching chain value" sentinel.
struct ProofOfProcessing {
  Bytes tee_sig;
  uint64_t cnt_pop = 0;

  bool operator==(const ProofOfProcessing&) const = default;
};

// The monitor's signed hash-chain value; the client's anchor to an
// externally verified view of the database.
struct MonitorCheckpoint {
  Hash32 hc_m{};
  Bytes monitor_sig;
  std::string monitor_key_id;

  bool operator==(const MonitorCheckpoint&) const = default;
};

struct HashChainEntry {
  Hash32 hc{};
  uint64_t cnt = 0;

  bool operator==(const HashChainEntry&) const = default;
};

// Wire encodings. report_bytes is normative: it is the tag-0x06 pre-image
// followed by the length-prefixed authority signature, and it is the exact
// byte string signed inside every POR.
Bytes encode_data_item(const DataItem& item);
DataItem decode_data_item(ByteReader& in);

Bytes report_bytes(const AttestationReport& report);
AttestationReport decode_report(ByteReader& in);
AttestationReport decode_report_bytes(ByteView raw);

Bytes encode_por(const ProofOfReception& por);
ProofOfReception decode_por(ByteReader& in);

Bytes encode_pop(const ProofOfProcessing& pop);
ProofOfProcessing decode_pop(ByteReader& in);

Bytes encode_checkpoint(const MonitorCheckpoint& cp);
MonitorCheckpoint decode_checkpoint(ByteReader& in);

}  // namespace spmt
