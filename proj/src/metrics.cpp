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

#include "extremecast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "extremecast/quantile.hpp"

namespace extremecast {

namespace {

void check_lengths(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size()) throw std::invalid_argument("y and yhat lengths differ");
  if (y.empty()) throw std::invalid_argument("metrics need at least one sample");
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
  check_lengths(y, yhat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (yhat[i] - y[i]) * (yhat[i] - y[i]);
  return std::sqrt(s / static_cast<double>(y.size()));
}

RegressionMetrics regression_metrics(std::span<const double> y, std::span<const double> yhat) {
  check_lengths(y, yhat);
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  RegressionMetrics m;
  m.n = n;
  double ybar = 0.0, pbar = 0.0, ebar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ybar += y[i];
    pbar += yhat[i];
    ebar += y[i] - yhat[i];
  }
  ybar /= nd;
  pbar /= nd;
  ebar /= nd;
  double ss_res = 0.0, ss_tot = 0.0, abs_sum = 0.0, pct = 0.0, var_e = 0.0, syy = 0.0, spp = 0.0, syp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - yhat[i];
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
    abs_sum += std::abs(e);
    pct += std::abs(e) / std::max(std::abs(y[i]), 1e-6);
    var_e += (e - ebar) * (e - ebar);
    syy += (y[i] - ybar) * (y[i] - ybar);
    spp += (yhat[i] - pbar) * (yhat[i] - pbar);
    syp += (y[i] - ybar) * (yhat[i] - pbar);
  }
  m.mse = ss_res / nd;
  m.rmse = std::sqrt(m.mse);
  m.mae = abs_sum / nd;
  m.mape = 100.0 * pct / nd;
  if (ss_tot == 0.0) {
    m.r2.reason = "constant target";
    m.explained_variance.reason = "constant target";
    m.pearson_r.reason = "constant target";
  } else {
    m.r2.value = 1.0 - ss_res / ss_tot;
    m.explained_variance.value = 1.0 - var_e / ss_tot;
    if (spp == 0.0) {
      m.pearson_r.reason = "constant prediction";
    } else {
      m.pearson_r.value = syp / std::sqrt(syy * spp);
    }
  }
  return m;
}

TailMetric extreme_rmse(std::span<const double> y, std::span<const double> yhat, Tail tail, double q) {
  check_lengths(y, yhat);
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("tail q must be in (0, 1)");
  const double threshold = quantile(y, tail == Tail::High ? 1.0 - q : q);
  TailMetric t;
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool in = tail == Tail::High ? y[i] > threshold : y[i] < threshold;
    if (!in) continue;
    s += (yhat[i] - y[i]) * (yhat[i] - y[i]);
    ++t.n;
  }
  if (t.n == 0) {
    t.rmse.reason = "empty tail subset";
  } else {
    t.rmse.value = std::sqrt(s / static_cast<double>(t.n));
  }
  return t;
}

}  // namespace extremecast
