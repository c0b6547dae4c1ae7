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

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spmt/bench.hpp"
#include "spmt/config.hpp"
#include "spmt/scenarios.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;
void handle_signal(int) { g_stop = 1; }

void wait_for_signal() {
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

spmt::Bytes read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spmt::ConfigError("cannot open: " + path);
  return spmt::Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int cmd_keygen(const std::string& out_dir, int sources, int monitors) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  spmt::KeyRegistry registry;

  spmt::PrivateKey authority = spmt::PrivateKey::generate();
  authority.to_pem_file(out_dir + "/authority.pem");
  registry.apk = authority.public_key();
  registry.expected_measurement = spmt::self_measurement();

  std::ofstream apk_out(out_dir + "/apk.der", std::ios::binary);
  const spmt::Bytes& apk_der = registry.apk.der();
  apk_out.write(reinterpret_cast<const char*>(apk_der.data()),
                static_cast<std::streamsize>(apk_der.size()));

  for (int i = 1; i <= sources; ++i) {
    std::string id = "ds-" + std::to_string(i);
    spmt::PrivateKey key = spmt::PrivateKey::generate();
    key.to_pem_file(out_dir + "/" + id + ".pem");
    registry.data_source_keys[id] = key.public_key();
  }
  for (int i = 1; i <= monitors; ++i) {
    std::string id = "monitor-" + std::to_string(i);
    spmt::PrivateKey key = spmt::PrivateKey::generate();
    key.to_pem_file(out_dir + "/" + id + ".pem");
    registry.monitor_keys[id] = key.public_key();
  }
  registry.save_json(out_dir + "/registry.json");

  std::cout << "wrote " << out_dir << "/registry.json\n";
  std::cout << "expected_measurement " << spmt::to_hex(spmt::view(registry.expected_measurement))
            << "\n";
  return 0;
}

int cmd_serve_db(const spmt::ServiceConfig& cfg) {
  spmt::DatabaseService::Options opts;
  opts.listen_address = cfg.db_listen;
  opts.adversary = spmt::AdversaryMode::parse(cfg.adversary);
  opts.log_file = cfg.db_log_file;
  spmt::DatabaseService db(opts);
  db.start();
  std::cout << "database listening on " << db.address() << " adversary="
            << opts.adversary.to_string() << "\n";
  wait_for_signal();
  db.stop();
  return 0;
}

int cmd_serve_tee(const spmt::ServiceConfig& cfg) {
  spmt::KeyRegistry registry = spmt::KeyRegistry::load_json(cfg.registry_path);
  spmt::PrivateKey authority_key = spmt::PrivateKey::from_pem_file(cfg.authority_key_path);
  spmt::AttestationAuthority authority(authority_key);

  spmt::PrivateKey tee_key = spmt::PrivateKey::generate();
  spmt::AttestationReport report = authority.issue_report(
      spmt::self_measurement(), spmt::view(tee_key.public_key().der()));

  spmt::TeeConfig tee_cfg;
  tee_cfg.batch_capacity = cfg.batch_capacity;
  tee_cfg.history_capacity = cfg.freq_tee > 0 && cfg.freq_monitor > 0
                                 ? spmt::compute_history_capacity(cfg.freq_tee, cfg.freq_monitor)
                                 : cfg.history_capacity;
  tee_cfg.flush_timeout = std::chrono::milliseconds(cfg.flush_timeout_ms);
  tee_cfg.blocking_submissions = cfg.blocking;

  auto state = std::make_unique<spmt::TeeState>(std::move(tee_key), report, registry, tee_cfg);
  spmt::TeeService::Options opts;
  opts.listen_address = cfg.tee_listen;
  spmt::TeeService tee(std::move(state), spmt::make_tcp_db_link(cfg.dial_db()), opts);
  tee.start();
  std::cout << "server listening on " << tee.address() << " database=" << cfg.dial_db()
            << " n=" << tee_cfg.batch_capacity << " N=" << tee_cfg.history_capacity
            << (tee_cfg.blocking_submissions ? " blocking" : "") << "\n";
  wait_for_signal();
  tee.stop();
  return 0;
}

int cmd_serve_monitor(const spmt::ServiceConfig& cfg) {
  spmt::PrivateKey key = spmt::PrivateKey::from_pem_file(cfg.monitor_key_path);
  spmt::MonitorService::Options opts;
  opts.listen_address = cfg.monitor_listen;
  opts.db_address = cfg.dial_db();
  opts.pull_period = std::chrono::milliseconds(cfg.pull_period_ms);
  spmt::MonitorService monitor(
      std::make_unique<spmt::MonitorState>(key, cfg.monitor_key_id), opts);
  monitor.start();
  std::cout << "monitor listening on " << monitor.address() << " database=" << cfg.dial_db()
            << " pull_period_ms=" << cfg.pull_period_ms << "\n";
  wait_for_signal();
  monitor.stop();
  return 0;
}

int cmd_submit(const spmt::ServiceConfig& cfg, const std::string& payload_file,
               const std::string& out_path) {
  spmt::PrivateKey key = spmt::PrivateKey::from_pem_file(cfg.source_key_path);
  spmt::DataSource source(key, cfg.source_key_id);
  spmt::Bytes payload = read_file_bytes(payload_file);
  auto result = source.submit(cfg.dial_tee(), payload);
  if (auto* code = std::get_if<spmt::ErrorCode>(&result)) {
    std::cerr << "submission rejected: " << spmt::error_code_name(*code) << "\n";
    return 1;
  }
  auto& pkg = std::get<spmt::HandoverPackage>(result);
  std::cout << "accepted cnt_por=" << pkg.por.cnt_por << "\n";
  if (!out_path.empty()) {
    spmt::save_package(out_path, pkg);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_test(const std::string& pkg_path, const std::string& monitor_addr,
             const std::string& tee_addr, const std::string& apk_path, const std::string& em_hex) {
  spmt::ClientContext ctx;
  ctx.apk = spmt::PublicKey::from_der(spmt::view(read_file_bytes(apk_path)));
  ctx.expected_measurement = spmt::hash32_from_hex(em_hex);
  spmt::HandoverPackage pkg = spmt::load_package(pkg_path);

  spmt::Detail handover = spmt::verify_handover(pkg, ctx);
  if (handover != spmt::Detail::ok) {
    std::cout << "rejected_source (" << spmt::detail_name(handover) << ")\n";
    return 2;
  }
  spmt::MembershipVerdict v = spmt::membership_test(pkg, monitor_addr, tee_addr, ctx);
  std::cout << spmt::outcome_name(v.outcome) << " (" << spmt::detail_name(v.detail)
            << ") cnt_por=" << v.cnt_por << " cnt_pop=" << v.cnt_pop << "\n";
  switch (v.outcome) {
    case spmt::Outcome::accepted: return 0;
    case spmt::Outcome::retry_later: return 3;
    default: return 2;
  }
}

spmt::TopologyOptions bench_topology_options(const spmt::ServiceConfig& cfg) {
  spmt::TopologyOptions opts;
  opts.tee.batch_capacity = cfg.batch_capacity;
  opts.tee.history_capacity = cfg.history_capacity;
  opts.tee.flush_timeout = std::chrono::milliseconds(cfg.flush_timeout_ms);
  opts.tee.blocking_submissions = cfg.blocking;
  return opts;
}

int emit_report(const spmt::BenchReport& report, const std::string& csv_path) {
  std::cout << spmt::summary_text(report);
  if (!csv_path.empty()) {
    spmt::write_csv(csv_path, report);
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"source-assisted private membership testing harness"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "declarative config file (json)");

  spmt::ServiceConfig cfg;
  // The config file provides defaults; flags parsed below override them.
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = spmt::ServiceConfig::load(argv[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate keys and the trust registry");
  std::string out_dir = "keys";
  int n_sources = 1, n_monitors = 1;
  keygen->add_option("--out", out_dir, "output directory");
  keygen->add_option("--sources", n_sources, "data source key count");
  keygen->add_option("--monitors", n_monitors, "monitor key count");

  // serve-*
  auto* serve_db = app.add_subcommand("serve-db", "run the database host");
  std::string adversary_flag;
  serve_db->add_option("--listen", cfg.db_listen, "listen address");
  serve_db->add_option("--adversary", adversary_flag, "adversary.mode");
  serve_db->add_option("--log-file", cfg.db_log_file, "persistent append log");

  auto* serve_tee = app.add_subcommand("serve-tee", "run the simulated-TEE server");
  serve_tee->add_option("--listen", cfg.tee_listen, "listen address");
  serve_tee->add_option("--db", cfg.db_address, "database address");
  serve_tee->add_option("--registry", cfg.registry_path, "registry json");
  serve_tee->add_option("--authority-key", cfg.authority_key_path, "attestation authority key");
  serve_tee->add_option("--batch-size", cfg.batch_capacity, "items per batch (n)");
  serve_tee->add_option("--history-capacity", cfg.history_capacity, "chain history size (N)");
  serve_tee->add_option("--freq-tee", cfg.freq_tee, "expected batches per second");
  serve_tee->add_option("--freq-monitor", cfg.freq_monitor, "slowest monitor pulls per second");
  serve_tee->add_option("--flush-ms", cfg.flush_timeout_ms, "partial batch flush timeout");
  serve_tee->add_flag("--blocking", cfg.blocking, "block submissions during export");

  auto* serve_monitor = app.add_subcommand("serve-monitor", "run the monitor");
  serve_monitor->add_option("--listen", cfg.monitor_listen, "listen address");
  serve_monitor->add_option("--db", cfg.db_address, "database address");
  serve_monitor->add_option("--key", cfg.monitor_key_path, "monitor signing key");
  serve_monitor->add_option("--key-id", cfg.monitor_key_id, "monitor key id");
  serve_monitor->add_option("--pull-ms", cfg.pull_period_ms, "pull period");

  // data source / client
  auto* submit = app.add_subcommand("submit", "sign and submit a payload");
  std::string payload_file, pkg_out;
  submit->add_option("--payload-file", payload_file, "payload file")->required();
  submit->add_option("--tee", cfg.tee_address, "server address");
  submit->add_option("--key", cfg.source_key_path, "data source key");
  submit->add_option("--key-id", cfg.source_key_id, "data source key id");
  submit->add_option("--out", pkg_out, "write the handover package here");

  auto* handover = app.add_subcommand("handover", "submit and write the handover package");
  handover->add_option("--payload-file", payload_file, "payload file")->required();
  handover->add_option("--out", pkg_out, "package output path")->required();
  handover->add_option("--tee", cfg.tee_address, "server address");
  handover->add_option("--key", cfg.source_key_path, "data source key");
  handover->add_option("--key-id", cfg.source_key_id, "data source key id");

  auto* test = app.add_subcommand("test", "run the membership test for a package");
  std::string pkg_path, apk_path, em_hex, monitor_addr, tee_addr;
  test->add_option("--pkg", pkg_path, "handover package")->required();
  test->add_option("--monitor", monitor_addr, "monitor address")->required();
  test->add_option("--tee", tee_addr, "server address")->required();
  test->add_option("--apk", apk_path, "attestation authority public key (DER)")->required();
  test->add_option("--em", em_hex, "expected measurement (hex)")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "performance harness (self-hosted topology)");
  bench->require_subcommand(1);
  std::string csv_path;
  std::vector<size_t> levels;
  size_t iterations = 0, payload_bytes = 0, throughput_concurrency = 2048;
  int duration_s = 0;
  std::vector<uint64_t> scaling_sizes{1000, 1000000};
  for (auto* sub : {bench->add_subcommand("upload", "submission latency"),
                    bench->add_subcommand("testing", "membership testing latency"),
                    bench->add_subcommand("throughput", "sustained request rate"),
                    bench->add_subcommand("scaling", "latency vs database size")}) {
    sub->add_option("--csv", csv_path, "raw samples file");
    sub->add_option("--levels", levels, "concurrency levels");
    sub->add_option("--iterations", iterations, "iterations per level");
    sub->add_option("--payload-bytes", payload_bytes, "payload size");
    sub->add_option("--duration", duration_s, "seconds (throughput)");
    sub->add_option("--batch-size", cfg.batch_capacity, "items per batch (n)");
  }
  bench->get_subcommand("throughput")
      ->add_option("--concurrency", throughput_concurrency, "worker count");
  auto* scaling_cmd = bench->get_subcommand("scaling");
  scaling_cmd->add_option("--sizes", scaling_sizes, "database sizes to probe");

  std::string throughput_kind = "upload";
  bench->get_subcommand("throughput")
      ->add_option("--kind", throughput_kind, "upload | pop");

  // attack
  auto* attack = app.add_subcommand("attack", "scripted adversarial scenarios");
  attack->require_subcommand(1);
  auto* attack_run = attack->add_subcommand("run", "run one scenario");
  std::string scenario_name;
  uint64_t seed = 1;
  bool control = false;
  attack_run->add_option("name", scenario_name, "scenario name")->required();
  attack_run->add_option("--seed", seed, "scenario seed");
  attack_run->add_flag("--control", control, "run the honest twin");
  auto* attack_all = attack->add_subcommand("all", "run the whole catalog");
  std::string junit_path;
  int n_seeds = 1;
  attack_all->add_option("--junit", junit_path, "junit xml output");
  attack_all->add_option("--seeds", n_seeds, "seeds per scenario");
  auto* attack_list = attack->add_subcommand("list", "list the catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (keygen->parsed()) return cmd_keygen(out_dir, n_sources, n_monitors);
    if (serve_db->parsed()) {
      if (!adversary_flag.empty()) cfg.adversary = adversary_flag;
      return cmd_serve_db(cfg);
    }
    if (serve_tee->parsed()) return cmd_serve_tee(cfg);
    if (serve_monitor->parsed()) return cmd_serve_monitor(cfg);
    if (submit->parsed() || handover->parsed()) return cmd_submit(cfg, payload_file, pkg_out);
    if (test->parsed()) return cmd_test(pkg_path, monitor_addr, tee_addr, apk_path, em_hex);

    if (bench->parsed()) {
      spmt::BenchConfig bench_cfg = cfg.bench;
      if (!levels.empty()) bench_cfg.concurrency_levels = levels;
      if (iterations != 0) bench_cfg.iterations = iterations;
      if (payload_bytes != 0) bench_cfg.payload_bytes = payload_bytes;
      if (duration_s != 0) bench_cfg.duration = std::chrono::seconds(duration_s);

      spmt::Topology topo(bench_topology_options(cfg));
      if (bench->get_subcommand("upload")->parsed())
        return emit_report(spmt::bench_upload(topo, bench_cfg), csv_path);
      if (bench->get_subcommand("testing")->parsed())
        return emit_report(spmt::bench_testing(topo, bench_cfg), csv_path);
      if (bench->get_subcommand("throughput")->parsed()) {
        auto kind = throughput_kind == "pop" ? spmt::ThroughputKind::pop
                                             : spmt::ThroughputKind::upload;
        return emit_report(spmt::bench_throughput(topo, kind, throughput_concurrency, bench_cfg),
                           csv_path);
      }
      if (scaling_cmd->parsed()) {
        auto rows = spmt::scaling_probe(topo, scaling_sizes, bench_cfg);
        std::cout << spmt::scaling_text(rows);
        std::cout << "reference demand: 460000 items/hour = "
                  << spmt::upload_demand_per_sec(460000) << " submissions/sec; "
                  << "2048 clients x 163 tests/day = "
                  << spmt::fleet_test_demand_per_sec(
                         2048, spmt::per_client_test_rate_per_sec(163))
                  << " tests/sec\n";
        return 0;
      }
    }

    if (attack->parsed()) {
      if (attack_list->parsed()) {
        for (const auto& s : spmt::scenario_catalog())
          std::cout << s.name << " [" << s.family << "] expected="
                    << spmt::expectation_name(s.expected) << " : " << s.description << "\n";
        return 0;
      }
      if (attack_run->parsed()) {
        spmt::ScenarioReport report = spmt::run_scenario(scenario_name, seed, control);
        std::cout << report.name << " seed=" << report.seed
                  << (report.control ? " control" : "") << " expected=" << report.expected
                  << " observed=" << report.observed << " -> "
                  << (report.pass ? "PASS" : "FAIL") << "\n  " << report.detail << "\n";
        return report.pass ? 0 : 1;
      }
      if (attack_all->parsed()) {
        std::vector<spmt::ScenarioReport> reports;
        bool all_pass = true;
        for (const auto& s : spmt::scenario_catalog()) {
          for (int i = 0; i < n_seeds; ++i) {
            spmt::ScenarioReport r = spmt::run_scenario(s.name, seed + i);
            std::cout << r.name << " seed=" << r.seed << " expected=" << r.expected
                      << " observed=" << r.observed << " -> " << (r.pass ? "PASS" : "FAIL")
                      << "\n";
            all_pass = all_pass && r.pass;
            reports.push_back(std::move(r));
          }
        }
        if (!junit_path.empty()) {
          std::ofstream out(junit_path);
          out << spmt::junit_xml(reports);
          std::cout << "wrote " << junit_path << "\n";
        }
        return all_pass ? 0 : 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
