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

#include "extremecast/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace extremecast {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)), m_(xs_.size(), 0.0) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) throw std::invalid_argument("spline needs at least two matching points");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(xs_[i] > xs_[i - 1])) throw std::invalid_argument("spline abscissae must increase");
  }
  if (n == 2) return;
  // Thomas algorithm on the interior second derivatives.
  const std::size_t k = n - 2;
  std::vector<double> diag(k), upper(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double lower = xs_[i + 1] - xs_[i];  // h of row i equals upper of row i-1
    const double f = lower / diag[i - 1];
    diag[i] -= f * upper[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  std::vector<double> sol(k);
  for (std::size_t i = k; i-- > 0;) {
    sol[i] = (rhs[i] - (i + 1 < k ? upper[i] * sol[i + 1] : 0.0)) / diag[i];
  }
  for (std::size_t i = 0; i < k; ++i) m_[i + 1] = sol[i];
}

double NaturalCubicSpline::operator()(double x) const {
  const std::size_t n = xs_.size();
  std::size_t seg = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  seg = std::clamp<std::size_t>(seg, 1, n - 1) - 1;
  const double h = xs_[seg + 1] - xs_[seg];
  const double a = (xs_[seg + 1] - x) / h;
  const double b = (x - xs_[seg]) / h;
  return a * ys_[seg] + b * ys_[seg + 1] +
         ((a * a * a - a) * m_[seg] + (b * b * b - b) * m_[seg + 1]) * h * h / 6.0;
}

}  // namespace extremecast
