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

#include "spmt/scenarios.hpp"

#include <map>
#include <set>

#include "doctest.h"

using namespace spmt;

TEST_CASE("the catalog has exactly twelve uniquely named scenarios") {
  const auto& catalog = scenario_catalog();
  CHECK(catalog.size() == 12);
  std::set<std::string> names;
  for (const auto& s : catalog) names.insert(s.name);
  CHECK(names.size() == catalog.size());
}

TEST_CASE("every scenario maps to exactly one attack family") {
  std::map<std::string, int> families;
  for (const auto& s : scenario_catalog()) {
    CHECK((s.family == "message" || s.family == "tee" || s.family == "database"));
    families[s.family]++;
  }
  CHECK(families["message"] == 6);
  CHECK(families["tee"] == 2);
  CHECK(families["database"] == 4);
}

TEST_CASE("expected verdicts match the analysis") {
  std::map<std::string, Expectation> expected = {
      {"tamper_messages", Expectation::detected},
      {"drop_messages", Expectation::never_accepts},
      {"delay_swap_por", Expectation::detected},
      {"replay_por_other_item", Expectation::detected},
      {"replay_submission_same_item", Expectation::harmless_accept},
      {"replay_pop", Expectation::never_accepts},
      {"interrupt_tee", Expectation::never_accepts},
      {"impersonate_tee", Expectation::detected},
      {"impersonate_monitor", Expectation::detected},
      {"drop_batch_forge_ack", Expectation::never_accepts},
      {"fork_db", Expectation::never_accepts},
      {"drop_after_monitor", Expectation::evidence_at_monitor},
  };
  for (const auto& s : scenario_catalog()) {
    REQUIRE(expected.contains(s.name));
    CHECK(s.expected == expected.at(s.name));
  }
}

TEST_CASE("unknown scenario names report failure instead of crashing") {
  ScenarioReport r = run_scenario("no_such_attack", 1);
  CHECK_FALSE(r.pass);
}

// One adversarial run and one control run as a smoke check; the acceptance
// suite runs the whole catalog across seeds.
TEST_CASE("smoke: impersonate_tee is detected and its control accepts") {
  ScenarioReport attack = run_scenario("impersonate_tee", 7);
  CHECK(attack.pass);
  CHECK(attack.observed == "detected");
  ScenarioReport control = run_scenario("impersonate_tee", 7, true);
  CHECK(control.pass);
  CHECK(control.observed == "accepted");
}

TEST_CASE("smoke: fork_db never accepts the forked-out item") {
  ScenarioReport attack = run_scenario("fork_db", 3);
  CHECK(attack.pass);
  CHECK(attack.observed == "never_accepts");
}

TEST_CASE("junit output counts failures") {
  std::vector<ScenarioReport> reports(2);
  reports[0].name = "a";
  reports[0].pass = true;
  reports[1].name = "b";
  reports[1].pass = false;
  reports[1].expected = "detected";
  reports[1].observed = "accepted";
  std::string xml = junit_xml(reports);
  CHECK(xml.find("tests=\"2\"") != std::string::npos);
  CHECK(xml.find("failures=\"1\"") != std::string::npos);
  CHECK(xml.find("<failure") != std::string::npos);
}
