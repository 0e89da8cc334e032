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

#include "extremecast/savitzky_golay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace extremecast {

namespace {

// Solves A z = b for a small dense SPD system by Gaussian elimination with
// partial pivoting.
std::vector<double> solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    const double d = a[col * n + col];
    if (d == 0.0) throw std::runtime_error("singular Savitzky-Golay normal equations");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> z(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * z[c];
    z[i] = s / a[i * n + i];
  }
  return z;
}

}  // namespace

std::vector<double> right_edge_coefficients(std::size_t n, std::size_t poly) {
  if (n == 0) throw std::invalid_argument("Savitzky-Golay window must be non-empty");
  if (poly >= n) throw std::invalid_argument("Savitzky-Golay order must be below the point count");
  const std::size_t m = poly + 1;
  auto pos = [n](std::size_t i) { return static_cast<double>(i) - static_cast<double>(n - 1); };
  // Normal matrix G = V^T V.
  std::vector<double> g(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) g[r * m + c] += std::pow(pos(i), static_cast<double>(r + c));
    }
  }
  std::vector<double> e0(m, 0.0);
  e0[0] = 1.0;
  const std::vector<double> z = solve(g, e0, m);
  std::vector<double> coeffs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) coeffs[i] += std::pow(pos(i), static_cast<double>(k)) * z[k];
  }
  return coeffs;
}

std::vector<double> savitzky_golay(const std::vector<double>& column, std::size_t window, std::size_t poly) {
  if (window % 2 == 0) throw std::invalid_argument("Savitzky-Golay window must be odd");
  if (poly >= window) throw std::invalid_argument("Savitzky-Golay order must be below the window");
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> cache;
  std::vector<double> out(column.size());
  for (std::size_t t = 0; t < column.size(); ++t) {
    const std::size_t n = std::min(t + 1, window);
    const std::size_t order = std::min(poly, n - 1);
    auto& coeffs = cache[{n, order}];
    if (coeffs.empty()) coeffs = right_edge_coefficients(n, order);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += coeffs[i] * column[t + 1 - n + i];
    out[t] = s;
  }
  return out;
}

}  // namespace extremecast
