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

#include "spmt/data_source.hpp"
#include "spmt/topology.hpp"

namespace spmt::testing {

// One deployment's keys plus builders for lean (service-free) tests.
struct TeeFixture {
  Deployment dep = Deployment::create();
  PrivateKey tee_key = PrivateKey::generate();
  AttestationReport report =
      AttestationAuthority(dep.authority_key)
          .issue_report(self_measurement(), view(tee_key.public_key().der()));
  DataSource source{dep.source_key, dep.source_key_id};
  std::mt19937_64 rng{0xf1f0};

  std::unique_ptr<TeeState> make_state(TeeConfig cfg) {
    return std::make_unique<TeeState>(tee_key, report, dep.registry, cfg);
  }

  DataItem item(size_t payload_bytes = 16) {
    return source.make_item(random_payload(rng, payload_bytes));
  }

  MonitorCheckpoint checkpoint_over(const Hash32& hc) {
    MonitorCheckpoint cp;
    cp.hc_m = hc;
    cp.monitor_sig = sign(dep.monitor_key, view(checkpoint_preimage(hc)));
    cp.monitor_key_id = dep.monitor_key_id;
    return cp;
  }
};

}  // namespace spmt::testing
