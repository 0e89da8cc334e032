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

#include <cstddef>
#include <vector>

namespace extremecast {

// Causal Savitzky-Golay smoothing.
//
// The value at day t is the least-squares polynomial of order `poly` fitted to
// days t-window+1 .. t and evaluated at t (the window's right edge). With
// positions j = -(n-1) .. 0 and Vandermonde V[j][k] = j^k, the weights are
//   c = V (V^T V)^{-1} e_0,
// i.e. the first row of the least-squares pseudo-inverse. For window 7,
// order 3 they are (-2, 4, 1, -4, -4, 8, 39) / 42.
// At the start of the series n = min(t+1, window) points are used with
// order min(poly, n-1).
std::vector<double> right_edge_coefficients(std::size_t n, std::size_t poly);

std::vector<double> savitzky_golay(const std::vector<double>& column, std::size_t window = 7,
                                   std::size_t poly = 3);

}  // namespace extremecast
