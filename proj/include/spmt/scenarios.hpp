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
#include <vector>

namespace spmt {

// What a scripted attack run is expected to end in.
//   detected            a client verdict pins the misbehaving party
//   never_accepts       no attempt ever yields acceptance (fails closed)
//   harmless_accept     acceptance is fine: the item really is stored
//   evidence_at_monitor acceptance is permitted because the monitor holds
//                       the item and can expose the operator
enum class Expectation : uint8_t {
  detected,
  never_accepts,
  harmless_accept,
  evidence_at_monitor,
};

const char* expectation_name(Expectation e);

struct Scenario {
  std::string name;
  // Which trust boundary the attack abuses: "message", "tee" or "database".
  std::string family;
  std::string description;
  Expectation expected;
};

// Every scripted attack, one per subsection of the correctness analysis.
// The excluded TEE-internal attacks (rollback, state continuity, forking
// the TEE itself) are assumed to be prevented by platform mechanisms and
// have no scenario; see the README.
const std::vector<Scenario>& scenario_catalog();

struct ScenarioReport {
  std::string name;
  uint64_t seed = 0;
  bool control = false;  // adversary disabled, honest twin must accept
  std::string expected;
  std::string observed;
  bool pass = false;
  std::string detail;
};

// Runs one scenario from a clean deployment. With control=true the
// interference is disabled and the run must end accepted.
ScenarioReport run_scenario(const std::string& name, uint64_t seed, bool control = false);

std::string junit_xml(const std::vector<ScenarioReport>& reports);

}  // namespace spmt
