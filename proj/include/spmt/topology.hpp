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

#include <memory>

#include "spmt/client.hpp"
#include "spmt/data_source.hpp"
#include "spmt/db_service.hpp"
#include "spmt/monitor_service.hpp"
#include "spmt/tee_service.hpp"

namespace spmt {

// Fresh keys for one deployment: authority, server, one data source, one
// monitor, plus the registry that binds them together.
struct Deployment {
  static Deployment create();

  PrivateKey authority_key;
  PrivateKey source_key;
  PrivateKey monitor_key;
  KeyRegistry registry;
  std::string source_key_id = "ds-1";
  std::string monitor_key_id = "monitor-1";
};

struct TopologyOptions {
  TeeConfig tee;
  AdversaryMode adversary;
  std::chrono::milliseconds monitor_pull_period{0};  // 0 = manual pulls
  size_t monitor_page_size = 1024;
  std::string db_log_file;
  // Route the server's database connection elsewhere (through an
  // interposer); empty = direct.
  std::string tee_db_address_override;
  std::chrono::milliseconds client_timeout{5000};
};

// One whole deployment on loopback: database, server, monitor, a registered
// data source, and client credentials. Services start in the constructor
// and stop on destruction.
class Topology {
 public:
  explicit Topology(const TopologyOptions& opts = {});
  ~Topology();

  DatabaseService& db() { return *db_; }
  TeeService& tee() { return *tee_; }
  MonitorService& monitor() { return *monitor_; }
  DataSource& source() { return *source_; }
  const Deployment& deployment() const { return deployment_; }

  std::string db_address() const { return db_->address(); }
  std::string tee_address() const { return tee_->address(); }
  std::string monitor_address() const { return monitor_->address(); }

  ClientContext client_context() const;

  // Conveniences for scripted runs.
  HandoverPackage submit(Bytes payload);  // throws on rejection
  uint64_t pull_monitor(std::optional<uint64_t> stop_at_position = std::nullopt);
  MembershipVerdict test_item(const HandoverPackage& pkg, TranscriptRecorder* rec = nullptr);
  // Submit filler items until the currently open batch seals, so prior
  // submissions become exportable without waiting for the flush timer.
  void roll_batch(std::mt19937_64& rng, size_t payload_bytes = 32);

 private:
  TopologyOptions opts_;
  Deployment deployment_;
  std::unique_ptr<DatabaseService> db_;
  std::unique_ptr<TeeService> tee_;
  std::unique_ptr<MonitorService> monitor_;
  std::unique_ptr<DataSource> source_;
};

}  // namespace spmt
