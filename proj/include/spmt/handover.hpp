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

#include "spmt/types.hpp"

namespace spmt {

// What the data source hands the client out of band: the item plus its POR.
// The transport is unauthenticated on purpose; the client re-verifies
// everything on receipt.
struct HandoverPackage {
  DataItem item;
  ProofOfReception por;
};

// File format: "GYK1" | len8(item) | item | len8(por) | por.
Bytes encode_package(const HandoverPackage& pkg);
HandoverPackage decode_package(ByteView raw);
void save_package(const std::string& path, const HandoverPackage& pkg);
HandoverPackage load_package(const std::string& path);

// Publicizable evidence for a membership test that keeps failing: the
// package plus the checkpoint that never produced an advancing counter.
// Any monitor can re-verify the POR and check its own mirror for the item.
// Format: "GYKE" | len8(item) | item | len8(por) | por | len8(cp) | cp.
struct EvidenceBundle {
  HandoverPackage pkg;
  MonitorCheckpoint checkpoint;
};

Bytes encode_evidence(const EvidenceBundle& bundle);
EvidenceBundle decode_evidence(ByteView raw);
void save_evidence(const std::string& path, const EvidenceBundle& bundle);
EvidenceBundle load_evidence(const std::string& path);

}  // namespace spmt
