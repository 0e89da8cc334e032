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

#include <optional>
#include <span>
#include <string>

namespace extremecast {

// Optional metric: value or the reason it is undefined.
struct MaybeMetric {
  std::optional<double> value;
  std::string reason;
};

struct RegressionMetrics {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  MaybeMetric r2;
  MaybeMetric explained_variance;
  MaybeMetric pearson_r;
  double mape = 0.0;  // percent
  std::size_t n = 0;
};

// Raw-unit metrics. MAPE uses max(|y|, 1e-6) in the denominator.
RegressionMetrics regression_metrics(std::span<const double> y, std::span<const double> yhat);

enum class Tail { High, Low };

struct TailMetric {
  MaybeMetric rmse;
  std::size_t n = 0;
};

// RMSE over test targets strictly beyond the quantile(y, 1-q) (high) or
// quantile(y, q) (low).
TailMetric extreme_rmse(std::span<const double> y, std::span<const double> yhat, Tail tail, double q = 0.05);

double rmse(std::span<const double> y, std::span<const double> yhat);

}  // namespace extremecast
