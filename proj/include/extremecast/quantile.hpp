// Copyright 2026 The ExtremeCast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

namespace extremecast {

// Linear interpolation between order statistics ("type 7"): for sorted x of
// length n, h = (n-1)*q, result = x[floor h] + (h - floor h)*(x[floor h + 1] - x[floor h]).
// Example: x = {1,2,3,4,5}: q=0.25 -> 2, q=0.5 -> 3, q=0.75 -> 4, so IQR = 2.
double quantile(std::span<const double> values, double q);
double quantile_sorted(std::span<const double> sorted, double q);
double median(std::span<const double> values);

double mean(std::span<const double> values);
// Sample standard deviation (n-1 denominator); 0 for fewer than two points.
double sample_std(std::span<const double> values);

}  // namespace extremecast
