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
#include <cmath>

namespace spmt {

double percentile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  double idx = p * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(idx));
  size_t hi = std::min(sorted.size() - 1, lo + 1);
  double t = idx - static_cast<double>(lo);
  return sorted[lo] * (1.0 - t) + sorted[hi] * t;
}

std::vector<double> iqr_filter(const std::vector<double>& samples, double multiplier,
                               size_t* removed) {
  if (samples.size() < 4) {
    if (removed != nullptr) *removed = 0;
    return samples;
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double q1 = percentile_sorted(sorted, 0.25);
  double q3 = percentile_sorted(sorted, 0.75);
  double iqr = q3 - q1;
  double lo = q1 - multiplier * iqr;
  double hi = q3 + multiplier * iqr;
  std::vector<double> kept;
  kept.reserve(samples.size());
  for (double v : samples)
    if (v >= lo && v <= hi) kept.push_back(v);
  if (removed != nullptr) *removed = samples.size() - kept.size();
  return kept;
}

double mean_of(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

double median_of(std::vector<double> samples) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  return percentile_sorted(samples, 0.5);
}

Summary summarize(const std::vector<double>& samples, double iqr_multiplier) {
  Summary s;
  s.samples = samples.size();
  if (samples.empty()) return s;

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  s.q1 = percentile_sorted(sorted, 0.25);
  s.q3 = percentile_sorted(sorted, 0.75);

  std::vector<double> kept = iqr_filter(samples, iqr_multiplier, &s.outliers);
  s.outlier_fraction =
      s.samples == 0 ? 0.0 : static_cast<double>(s.outliers) / static_cast<double>(s.samples);
  s.mean = mean_of(kept);
  s.median = median_of(kept);
  if (kept.size() > 1) {
    double var = 0.0;
    for (double v : kept) var += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(kept.size() - 1));
  }
  return s;
}

}  // namespace spmt
