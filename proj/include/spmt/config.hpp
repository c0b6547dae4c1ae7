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

#include "spmt/bench.hpp"

namespace spmt {

// One declarative file for a whole deployment; CLI flags override fields.
struct ServiceConfig {
  std::string tee_listen = "127.0.0.1:7101";
  std::string db_listen = "127.0.0.1:7102";
  std::string monitor_listen = "127.0.0.1:7103";
  std::string db_address;       // dial address; defaults to db_listen
  std::string monitor_address;  // dial address; defaults to monitor_listen
  std::string tee_address;      // dial address; defaults to tee_listen

  std::string registry_path = "keys/registry.json";
  std::string authority_key_path = "keys/authority.pem";
  std::string monitor_key_path = "keys/monitor-1.pem";
  std::string source_key_path = "keys/ds-1.pem";
  std::string source_key_id = "ds-1";
  std::string monitor_key_id = "monitor-1";

  size_t batch_capacity = 32;
  size_t history_capacity = 1024;
  double freq_tee = 0.0;      // when both set, history capacity is derived
  double freq_monitor = 0.0;
  int flush_timeout_ms = 1000;
  bool blocking = false;
  int pull_period_ms = 1000;
  std::string adversary = "honest";
  std::string db_log_file;

  BenchConfig bench;

  static ServiceConfig load(const std::string& path);

  std::string dial_tee() const { return tee_address.empty() ? tee_listen : tee_address; }
  std::string dial_db() const { return db_address.empty() ? db_listen : db_address; }
  std::string dial_monitor() const {
    return monitor_address.empty() ? monitor_listen : monitor_address;
  }
};

}  // namespace spmt
