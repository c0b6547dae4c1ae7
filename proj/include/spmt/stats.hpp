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

#include <cstddef>
#include <vector>

namespace spmt {

struct Summary {
  size_t samples = 0;   // before filtering
  size_t outliers = 0;  // removed by the IQR rule
  double outlier_fraction = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Linear-interpolation percentile over a sorted sample (0 <= p <= 1).
double percentile_sorted(const std::vector<double>& sorted, double p);

// Keeps values inside [Q1 - k*IQR, Q3 + k*IQR].
std::vector<double> iqr_filter(const std::vector<double>& samples, double multiplier,
                               size_t* removed = nullptr);

// Mean/median/stddev after IQR filtering; quartiles are pre-filter.
Summary summarize(const std::vector<double>& samples, double iqr_multiplier = 1.5);

double mean_of(const std::vector<double>& samples);
double median_of(std::vector<double> samples);

}  // namespace spmt
