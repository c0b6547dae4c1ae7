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

#include "spmt/bench.hpp"

#include <poll.h>

#include <barrier>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <type_traits>

namespace spmt {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

size_t logical_cores() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// One concurrent burst of C requests per iteration, pumped by a few event
// workers rather than one OS thread per client (the load generator must not
// drown the machine it shares with the services). Per request:
//   prepare(i) is timed client-side pre-work producing the request bytes;
//   finish(i, frame) is timed client-side post-work over the reply.
// Each iteration contributes one data point: the mean latency across C.
struct BurstOps {
  std::function<Bytes(size_t)> prepare;
  std::function<bool(size_t, const Frame&)> finish;
};

std::vector<double> run_level(const std::string& address, size_t concurrency, size_t iterations,
                              const BurstOps& ops) {
  size_t pumps = std::min<size_t>(std::max<size_t>(1, logical_cores()), concurrency);
  std::vector<std::vector<size_t>> owned(pumps);
  std::vector<TcpConn> conns;
  conns.reserve(concurrency);
  for (size_t i = 0; i < concurrency; ++i) {
    conns.push_back(TcpConn::connect(address));
    owned[i % pumps].push_back(i);
  }

  std::vector<std::vector<double>> lat(iterations, std::vector<double>(concurrency, NAN));
  std::barrier sync(static_cast<ptrdiff_t>(pumps) + 1);
  std::atomic<bool> failed{false};

  auto pump = [&](size_t p) {
    const std::vector<size_t>& mine = owned[p];
    std::vector<pollfd> pfds(mine.size());
    for (size_t k = 0; k < mine.size(); ++k)
      pfds[k] = pollfd{conns[mine[k]].fd(), POLLIN, 0};
    std::vector<double> t0(mine.size(), 0.0);

    for (size_t it = 0; it < iterations; ++it) {
      sync.arrive_and_wait();
      try {
        std::vector<bool> done(mine.size(), false);
        size_t outstanding = 0;

        auto drain_ready = [&](int timeout_ms) {
          if (outstanding == 0) return;
          if (::poll(pfds.data(), pfds.size(), timeout_ms) <= 0) return;
          for (size_t k = 0; k < mine.size(); ++k) {
            if (done[k] || !(pfds[k].revents & POLLIN)) continue;
            auto frame = read_frame(conns[mine[k]]);
            if (!frame) throw TransportError("server closed during bench");
            bool ok = ops.finish(mine[k], *frame);
            lat[it][mine[k]] = ok ? now_ms() - t0[k] : NAN;
            done[k] = true;
            --outstanding;
          }
        };

        for (size_t k = 0; k < mine.size(); ++k) {
          t0[k] = now_ms();
          Bytes request = ops.prepare(mine[k]);
          conns[mine[k]].send_all(view(request));
          ++outstanding;
          drain_ready(0);  // keep early replies from queueing up
        }
        int waited = 0;
        while (outstanding > 0 && waited < 10000) {
          drain_ready(50);
          waited += 50;
        }
        if (outstanding > 0) throw TransportError("bench replies timed out");
      } catch (const Error&) {
        // a dead pump leaves NaN and sits out the remaining iterations; the
        // sockets are desynced once a reply went missing
        failed = true;
        sync.arrive_and_wait();  // end of this iteration
        for (size_t rest = it + 1; rest < iterations; ++rest) {
          sync.arrive_and_wait();
          sync.arrive_and_wait();
        }
        return;
      }
      sync.arrive_and_wait();
    }
  };

  std::vector<std::thread> threads;
  for (size_t p = 0; p < pumps; ++p) threads.emplace_back(pump, p);
  for (size_t it = 0; it < iterations; ++it) {
    sync.arrive_and_wait();
    sync.arrive_and_wait();
  }
  for (auto& t : threads) t.join();
  (void)failed;

  std::vector<double> points;
  points.reserve(iterations);
  for (size_t it = 0; it < iterations; ++it) {
    double sum = 0.0;
    size_t n = 0;
    for (double v : lat[it])
      if (!std::isnan(v)) {
        sum += v;
        ++n;
      }
    if (n > 0) points.push_back(sum / static_cast<double>(n));
  }
  return points;
}

void fill_report(BenchReport& report, const std::vector<size_t>& levels,
                 const std::vector<std::vector<double>>& points_per_level, double iqr) {
  for (size_t li = 0; li < levels.size(); ++li) {
    LevelStats level;
    level.concurrency = levels[li];
    level.latency_ms = summarize(points_per_level[li], iqr);
    report.levels.push_back(level);
    for (size_t it = 0; it < points_per_level[li].size(); ++it)
      report.samples.push_back(RawSample{levels[li], it, points_per_level[li][it]});
  }
}

}  // namespace

void BenchConfig::validate() const {
  if (concurrency_levels.empty()) throw ConfigError("no concurrency levels configured");
  size_t prev = 0;
  for (size_t c : concurrency_levels) {
    if (c == 0) throw ConfigError("concurrency level must be positive");
    if (c < prev) throw ConfigError("concurrency levels must be ascending");
    prev = c;
  }
  if (iterations == 0) throw ConfigError("iterations must be positive");
  if (payload_bytes == 0) throw ConfigError("payload size must be positive");
  if (duration.count() <= 0) throw ConfigError("duration must be positive");
  if (iqr_multiplier <= 0) throw ConfigError("IQR multiplier must be positive");
}

BenchReport bench_upload(Topology& topo, const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  report.kind = "upload";
  report.logical_cores = logical_cores();

  size_t max_level = cfg.concurrency_levels.back();
  std::vector<std::mt19937_64> rngs;
  for (size_t i = 0; i < max_level; ++i) rngs.emplace_back(0x5eed + i);

  std::vector<std::vector<double>> points_per_level;
  for (size_t level : cfg.concurrency_levels) {
    BurstOps ops;
    ops.prepare = [&](size_t i) {
      DataItem item = topo.source().make_item(random_payload(rngs[i], cfg.payload_bytes));
      return frame_bytes(msg::kSubmit, view(encode_data_item(item)));
    };
    ops.finish = [](size_t, const Frame& frame) { return frame.type == msg::kSubmitOk; };
    points_per_level.push_back(run_level(topo.tee_address(), level, cfg.iterations, ops));
  }
  fill_report(report, cfg.concurrency_levels, points_per_level, cfg.iqr_multiplier);
  report.database_size = topo.db().item_count();
  return report;
}

BenchReport bench_testing(Topology& topo, const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  report.kind = "testing";
  report.logical_cores = logical_cores();

  // One package per concurrent client, then at least one extra processed
  // batch plus a monitor sync so every package is coverable by the
  // progress rule.
  size_t max_level = cfg.concurrency_levels.back();
  std::mt19937_64 rng(0xbe9c4);
  std::vector<HandoverPackage> packages;
  packages.reserve(max_level);
  for (size_t i = 0; i < max_level; ++i)
    packages.push_back(topo.submit(random_payload(rng, cfg.payload_bytes)));
  // two rolls: the first may only complete the packages' own batch, the
  // second guarantees a processed batch strictly past it
  topo.roll_batch(rng);
  topo.roll_batch(rng);
  topo.pull_monitor();

  ClientContext ctx = topo.client_context();
  auto checkpoint = fetch_checkpoint(topo.monitor_address(), ctx);
  if (!checkpoint) throw TransportError("cannot fetch checkpoint for bench");

  // The full client-side check is timed: report validation and POR
  // verification up front, then the POP round trip, POP verification and
  // the counter rule on the reply.
  std::vector<std::vector<double>> points_per_level;
  for (size_t level : cfg.concurrency_levels) {
    BurstOps ops;
    ops.prepare = [&](size_t i) {
      if (verify_handover(packages[i], ctx) != Detail::ok)
        throw ProtocolError("bench package failed handover verification");
      return testing_request_bytes(packages[i], *checkpoint);
    };
    ops.finish = [&](size_t i, const Frame& frame) {
      if (frame.type != msg::kPopOk) return false;
      ProofOfProcessing pop;
      try {
        pop = decode_pop_body(view(frame.body));
      } catch (const EncodingError&) {
        return false;
      }
      auto tee_key = PublicKey::try_from_der(view(packages[i].por.report.tee_public_key_der));
      if (!tee_key || !verify(*tee_key, view(pop_preimage(pop.cnt_pop)), view(pop.tee_sig)))
        return false;
      return packages[i].por.cnt_por < pop.cnt_pop;
    };
    points_per_level.push_back(run_level(topo.tee_address(), level, cfg.iterations, ops));
  }
  fill_report(report, cfg.concurrency_levels, points_per_level, cfg.iqr_multiplier);
  report.database_size = topo.db().item_count();
  return report;
}

BenchReport bench_throughput(Topology& topo, ThroughputKind kind, size_t concurrency,
                             const BenchConfig& cfg) {
  cfg.validate();
  if (concurrency == 0) throw ConfigError("concurrency must be positive");
  BenchReport report;
  report.kind = kind == ThroughputKind::upload ? "throughput-upload" : "throughput-pop";
  report.logical_cores = logical_cores();

  std::optional<HandoverPackage> pkg;
  std::optional<MonitorCheckpoint> checkpoint;
  if (kind == ThroughputKind::pop) {
    std::mt19937_64 rng(0x7b9);
    pkg = topo.submit(random_payload(rng, cfg.payload_bytes));
    topo.roll_batch(rng);
    topo.roll_batch(rng);
    topo.pull_monitor();
    checkpoint = fetch_checkpoint(topo.monitor_address(), topo.client_context());
    if (!checkpoint) throw TransportError("cannot fetch checkpoint for bench");
  }

  std::vector<uint64_t> counts(concurrency, 0);
  std::barrier sync(static_cast<ptrdiff_t>(concurrency) + 1);
  std::vector<std::thread> threads;
  threads.reserve(concurrency);
  for (size_t i = 0; i < concurrency; ++i) {
    threads.emplace_back([&, i] {
      std::optional<TcpConn> conn;
      try {
        conn = TcpConn::connect(topo.tee_address());
      } catch (const Error&) {
      }
      std::mt19937_64 rng(0xfeed + i);
      sync.arrive_and_wait();
      if (!conn) return;
      try {
        auto deadline = std::chrono::steady_clock::now() + cfg.duration;
        while (std::chrono::steady_clock::now() < deadline) {
          if (kind == ThroughputKind::upload) {
            auto result = topo.source().submit_on(*conn, random_payload(rng, cfg.payload_bytes));
            if (std::holds_alternative<ErrorCode>(result)) break;
          } else {
            MembershipVerdict verdict = membership_test_on(*conn, *pkg, *checkpoint);
            if (verdict.outcome == Outcome::rejected_server) break;
          }
          ++counts[i];
        }
      } catch (const Error&) {
        // worker drops out; its partial count still contributes
      }
    });
  }
  sync.arrive_and_wait();
  for (auto& t : threads) t.join();

  uint64_t total = 0;
  for (size_t i = 0; i < concurrency; ++i) {
    total += counts[i];
    report.samples.push_back(RawSample{concurrency, i, static_cast<double>(counts[i])});
  }
  report.throughput_rps = static_cast<double>(total) / static_cast<double>(cfg.duration.count());
  report.throughput_rps_per_core =
      report.throughput_rps / static_cast<double>(report.logical_cores);
  report.database_size = topo.db().item_count();
  return report;
}

std::vector<ScalingRow> scaling_probe(Topology& topo, const std::vector<uint64_t>& sizes,
                                      const BenchConfig& cfg, size_t concurrency,
                                      size_t iterations) {
  cfg.validate();
  if (sizes.empty()) throw ConfigError("no database sizes configured");
  std::vector<ScalingRow> rows;
  std::mt19937_64 rng(0x5ca1e);

  for (uint64_t target : sizes) {
    uint64_t current = topo.db().item_count();
    if (target > current) {
      topo.tee().preload(target - current, 32, rng);
      topo.pull_monitor();
    }

    BenchConfig probe = cfg;
    probe.concurrency_levels = {concurrency};
    probe.iterations = iterations;
    BenchReport up = bench_upload(topo, probe);
    BenchReport test = bench_testing(topo, probe);

    ScalingRow row;
    row.database_size = topo.db().item_count();
    row.upload_median_ms = up.levels[0].latency_ms.median;
    row.testing_median_ms = test.levels[0].latency_ms.median;
    if (!rows.empty()) {
      row.upload_ratio = row.upload_median_ms / rows[0].upload_median_ms;
      row.testing_ratio = row.testing_median_ms / rows[0].testing_median_ms;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_csv(const std::string& path, const BenchReport& report) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write csv: " + path);
  out << "kind,concurrency,iteration,value\n";
  for (const auto& s : report.samples)
    out << report.kind << "," << s.concurrency << "," << s.iteration << "," << s.latency_ms
        << "\n";
}

std::string summary_text(const BenchReport& report) {
  std::ostringstream out;
  out << "kind=" << report.kind << " cores=" << report.logical_cores
      << " db_items=" << report.database_size << "\n";
  for (const auto& level : report.levels) {
    const Summary& s = level.latency_ms;
    out << "  concurrency=" << level.concurrency << " samples=" << s.samples
        << " outliers=" << s.outliers << " (" << s.outlier_fraction * 100.0 << "%)"
        << " mean=" << s.mean << "ms median=" << s.median << "ms stddev=" << s.stddev << "ms\n";
  }
  if (report.throughput_rps > 0) {
    out << "  throughput=" << report.throughput_rps << " req/s ("
        << report.throughput_rps_per_core << " req/s/core)\n";
  }
  return out.str();
}

std::string scaling_text(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << "db_size,upload_median_ms,testing_median_ms,upload_ratio,testing_ratio\n";
  for (const auto& r : rows)
    out << r.database_size << "," << r.upload_median_ms << "," << r.testing_median_ms << ","
        << r.upload_ratio << "," << r.testing_ratio << "\n";
  return out.str();
}

double upload_demand_per_sec(double items_per_hour) { return items_per_hour / 3600.0; }

double per_client_test_rate_per_sec(double tests_per_day) { return tests_per_day / 86400.0; }

double fleet_test_demand_per_sec(double clients, double per_client_per_sec) {
  return clients * per_client_per_sec;
}

}  // namespace spmt
