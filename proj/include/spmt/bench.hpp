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

#include "spmt/stats.hpp"
#include "spmt/topology.hpp"

namespace spmt {

struct BenchConfig {
  std::vector<size_t> concurrency_levels{16, 32, 64, 128, 256, 512, 1024};
  size_t iterations = 50;
  size_t payload_bytes = 4900;
  std::chrono::seconds duration{5};
  double iqr_multiplier = 1.5;

  void validate() const;  // throws ConfigError
};

struct LevelStats {
  size_t concurrency = 0;
  Summary latency_ms;
};

struct RawSample {
  size_t concurrency = 0;
  size_t iteration = 0;
  double latency_ms = 0.0;
};

struct BenchReport {
  std::string kind;
  std::vector<LevelStats> levels;
  std::vector<RawSample> samples;
  double throughput_rps = 0.0;
  double throughput_rps_per_core = 0.0;
  size_t logical_cores = 0;
  uint64_t database_size = 0;
};

// Round-trip SUBMIT latency per concurrency level. Each iteration launches
// one submission per concurrent source and records the mean across them as
// one data point; points are IQR-filtered per level.
BenchReport bench_upload(Topology& topo, const BenchConfig& cfg);

// Full client-side check latency: POR + report verification, the POP fetch,
// POP verification and the counter rule, against pre-built packages and a
// pre-fetched checkpoint.
BenchReport bench_testing(Topology& topo, const BenchConfig& cfg);

enum class ThroughputKind { upload, pop };

// C workers issue back-to-back requests for the configured duration.
BenchReport bench_throughput(Topology& topo, ThroughputKind kind, size_t concurrency,
                             const BenchConfig& cfg);

struct ScalingRow {
  uint64_t database_size = 0;
  double upload_median_ms = 0.0;
  double testing_median_ms = 0.0;
  double upload_ratio = 1.0;   // vs. the smallest probed size
  double testing_ratio = 1.0;
};

// Grows the database to each size (ascending) and measures median upload and
// testing latency at a fixed small concurrency.
std::vector<ScalingRow> scaling_probe(Topology& topo, const std::vector<uint64_t>& sizes,
                                      const BenchConfig& cfg, size_t concurrency = 8,
                                      size_t iterations = 30);

void write_csv(const std::string& path, const BenchReport& report);
std::string summary_text(const BenchReport& report);
std::string scaling_text(const std::vector<ScalingRow>& rows);

// Demand arithmetic for sizing against public-log workloads.
double upload_demand_per_sec(double items_per_hour);
double per_client_test_rate_per_sec(double tests_per_day);
double fleet_test_demand_per_sec(double clients, double per_client_per_sec);

}  // namespace spmt
