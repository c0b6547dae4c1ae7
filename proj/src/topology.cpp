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

#include "spmt/topology.hpp"

namespace spmt {

Deployment Deployment::create() {
  Deployment d;
  d.authority_key = PrivateKey::generate();
  d.source_key = PrivateKey::generate();
  d.monitor_key = PrivateKey::generate();
  d.registry.apk = d.authority_key.public_key();
  d.registry.expected_measurement = self_measurement();
  d.registry.data_source_keys[d.source_key_id] = d.source_key.public_key();
  d.registry.monitor_keys[d.monitor_key_id] = d.monitor_key.public_key();
  return d;
}

Topology::Topology(const TopologyOptions& opts) : opts_(opts), deployment_(Deployment::create()) {
  DatabaseService::Options db_opts;
  db_opts.adversary = opts.adversary;
  db_opts.log_file = opts.db_log_file;
  db_ = std::make_unique<DatabaseService>(db_opts);
  db_->start();

  PrivateKey tee_key = PrivateKey::generate();
  AttestationAuthority authority(deployment_.authority_key);
  AttestationReport report =
      authority.issue_report(self_measurement(), view(tee_key.public_key().der()));
  auto state = std::make_unique<TeeState>(std::move(tee_key), report, deployment_.registry,
                                          opts.tee);
  std::string db_addr =
      opts.tee_db_address_override.empty() ? db_->address() : opts.tee_db_address_override;
  tee_ = std::make_unique<TeeService>(std::move(state), make_tcp_db_link(db_addr));
  tee_->start();

  MonitorService::Options mon_opts;
  mon_opts.db_address = db_->address();
  mon_opts.pull_period = opts.monitor_pull_period;
  mon_opts.page_size = opts.monitor_page_size;
  monitor_ = std::make_unique<MonitorService>(
      std::make_unique<MonitorState>(deployment_.monitor_key, deployment_.monitor_key_id),
      mon_opts);
  monitor_->start();

  source_ = std::make_unique<DataSource>(deployment_.source_key, deployment_.source_key_id);
}

Topology::~Topology() {
  if (tee_) tee_->stop();
  if (monitor_) monitor_->stop();
  if (db_) db_->stop();
}

ClientContext Topology::client_context() const {
  ClientContext ctx;
  ctx.apk = deployment_.registry.apk;
  ctx.expected_measurement = deployment_.registry.expected_measurement;
  ctx.timeout = opts_.client_timeout;
  return ctx;
}

HandoverPackage Topology::submit(Bytes payload) {
  auto result = source_->submit(tee_->address(), std::move(payload));
  if (auto* pkg = std::get_if<HandoverPackage>(&result)) return std::move(*pkg);
  throw ProtocolError(std::string("submission rejected: ") +
                      error_code_name(std::get<ErrorCode>(result)));
}

uint64_t Topology::pull_monitor(std::optional<uint64_t> stop_at_position) {
  return monitor_->pull_now(stop_at_position).new_items;
}

MembershipVerdict Topology::test_item(const HandoverPackage& pkg, TranscriptRecorder* rec) {
  Detail handover = verify_handover(pkg, client_context());
  if (handover != Detail::ok)
    return MembershipVerdict{Outcome::rejected_source, handover, pkg.por.cnt_por, 0};
  return membership_test(pkg, monitor_->address(), tee_->address(), client_context(), rec);
}

void Topology::roll_batch(std::mt19937_64& rng, size_t payload_bytes) {
  size_t n = tee_->state().config().batch_capacity;
  size_t buffered = tee_->state().buffered_items();
  size_t fill = buffered % n == 0 && buffered > 0 ? 0 : n - (buffered % n);
  if (buffered == 0) fill = n;
  for (size_t i = 0; i < fill; ++i) submit(random_payload(rng, payload_bytes));
  tee_->wait_drained();
}

}  // namespace spmt
