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

#include <map>
#include <string>

#include "spmt/error.hpp"

namespace spmt {

// Switchable misbehaviors of the untrusted database host. Exactly one mode
// is active per run; all are fixed at startup except drop_after_monitor,
// which arms itself and fires on the first monitor pull covering the
// configured batch.
struct AdversaryMode {
  enum class Kind : uint8_t {
    honest,
    drop_batch,          // discard batch k entirely, still acknowledge it
    drop_item,           // discard item j of batch k, still acknowledge
    forge_ack_flood,     // spray spurious/duplicate acknowledgments
    fork,                // maintain a second view missing batch k
    drop_after_monitor,  // hide batch k once a monitor has downloaded it
  };

  Kind kind = Kind::honest;
  uint64_t batch = 0;
  uint32_t position = 0;
  uint32_t spurious_acks_per_store = 100;
  // fork: requester ids mapped to view 'B'; everyone else sees view 'A'.
  std::map<std::string, char> view_assignment;

  bool honest() const { return kind == Kind::honest; }

  // "honest" | "drop_batch:K" | "drop_item:K:J" | "forge_ack_flood[:N]"
  // | "fork:K[:requester=B,...]" | "drop_after_monitor:K"
  static AdversaryMode parse(const std::string& text);
  std::string to_string() const;
};

}  // namespace spmt
