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

#include "extremecast/activations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace extremecast {

double sigmoid(double x) {
  // Branch on sign so exp never overflows.
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = x;
  sigmoid_inplace(out.values());
  return out;
}

void sigmoid_inplace(std::span<double> x) {
  for (double& v : x) v = sigmoid(v);
}

void tanh_inplace(std::span<double> x) {
  for (double& v : x) v = std::tanh(v);
}

void softmax_inplace(std::span<double> x) {
  if (x.empty()) throw std::invalid_argument("empty softmax");
  const double m = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  for (double& v : x) {
    v = std::exp(v - m);
    total += v;
  }
  for (double& v : x) v /= total;
}

std::vector<double> softmax(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  softmax_inplace(out);
  return out;
}

void softmax_backward(std::span<const double> y, std::span<const double> dy, std::span<double> dx) {
  double inner = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) inner += y[i] * dy[i];
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] += y[i] * (dy[i] - inner);
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * std::numbers::sqrt2 / 2.0)); }

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x * std::numbers::sqrt2 / 2.0));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

}  // namespace extremecast
