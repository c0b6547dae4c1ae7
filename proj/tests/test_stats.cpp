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

#include "spmt/stats.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "spmt/bench.hpp"

using namespace spmt;

TEST_CASE("percentiles interpolate linearly") {
  std::vector<double> v = {1, 2, 3, 4};
  CHECK(percentile_sorted(v, 0.0) == 1.0);
  CHECK(percentile_sorted(v, 1.0) == 4.0);
  CHECK(percentile_sorted(v, 0.5) == doctest::Approx(2.5));
  CHECK(percentile_sorted(v, 0.25) == doctest::Approx(1.75));
  CHECK(median_of({5.0, 1.0, 3.0}) == 3.0);
  CHECK(mean_of({2.0, 4.0}) == 3.0);
}

TEST_CASE("the IQR rule removes exactly the injected outliers") {
  // A tight base sample plus known outliers on both sides.
  std::vector<double> base;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 96; ++i) base.push_back(10.0 + 0.01 * static_cast<double>(rng() % 100));
  std::vector<double> spiked = base;
  std::vector<double> outliers = {55.0, 99.0, -40.0, 77.7};
  spiked.insert(spiked.end(), outliers.begin(), outliers.end());

  size_t removed = 0;
  std::vector<double> kept = iqr_filter(spiked, 1.5, &removed);
  CHECK(removed == outliers.size());
  CHECK(kept.size() == base.size());
  for (double o : outliers) CHECK(std::find(kept.begin(), kept.end(), o) == kept.end());

  // manual fence check: everything kept lies inside [Q1-1.5IQR, Q3+1.5IQR]
  std::vector<double> sorted = spiked;
  std::sort(sorted.begin(), sorted.end());
  double q1 = percentile_sorted(sorted, 0.25);
  double q3 = percentile_sorted(sorted, 0.75);
  double lo = q1 - 1.5 * (q3 - q1);
  double hi = q3 + 1.5 * (q3 - q1);
  for (double v : kept) {
    CHECK(v >= lo);
    CHECK(v <= hi);
  }
}

TEST_CASE("summaries report the outlier fraction") {
  std::vector<double> samples(347, 5.0);
  samples.push_back(500.0);
  samples.push_back(501.0);
  samples.push_back(502.0);
  Summary s = summarize(samples, 1.5);
  CHECK(s.samples == 350);
  CHECK(s.outliers == 3);
  CHECK(s.outlier_fraction == doctest::Approx(3.0 / 350.0));
  CHECK(s.mean == doctest::Approx(5.0));
  CHECK(s.median == doctest::Approx(5.0));
}

TEST_CASE("small samples pass through the filter untouched") {
  size_t removed = 9;
  auto kept = iqr_filter({1.0, 100.0}, 1.5, &removed);
  CHECK(removed == 0);
  CHECK(kept.size() == 2);
}

TEST_CASE("bench configuration is validated") {
  BenchConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  BenchConfig zero_level = cfg;
  zero_level.concurrency_levels = {0};
  CHECK_THROWS_AS(zero_level.validate(), ConfigError);
  BenchConfig none = cfg;
  none.concurrency_levels.clear();
  CHECK_THROWS_AS(none.validate(), ConfigError);
  BenchConfig unsorted = cfg;
  unsorted.concurrency_levels = {64, 16};
  CHECK_THROWS_AS(unsorted.validate(), ConfigError);
  BenchConfig no_iters = cfg;
  no_iters.iterations = 0;
  CHECK_THROWS_AS(no_iters.validate(), ConfigError);
}

TEST_CASE("public-log demand arithmetic") {
  // 460k submissions per hour is about 128 per second.
  CHECK(upload_demand_per_sec(460000) == doctest::Approx(127.8).epsilon(0.01));
  // 163 tests/day rounds to 0.002 per second per client; 2048 clients
  // then need about 4.1 tests per second.
  double per_client = per_client_test_rate_per_sec(163);
  CHECK(per_client == doctest::Approx(0.00189).epsilon(0.05));
  double rounded = std::round(per_client * 1000.0) / 1000.0;
  CHECK(rounded == doctest::Approx(0.002));
  CHECK(fleet_test_demand_per_sec(2048, rounded) == doctest::Approx(4.096));
}
