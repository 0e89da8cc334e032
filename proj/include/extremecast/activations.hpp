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

#include "extremecast/tensor.hpp"

namespace extremecast {

double sigmoid(double x);
Tensor sigmoid(const Tensor& x);
void sigmoid_inplace(std::span<double> x);
void tanh_inplace(std::span<double> x);

// Max-subtracted softmax. Throws std::invalid_argument("empty softmax").
std::vector<double> softmax(std::span<const double> x);
void softmax_inplace(std::span<double> x);
// y = softmax(x) given, dy given: returns dx = y * (dy - <y, dy>), accumulated.
void softmax_backward(std::span<const double> y, std::span<const double> dy, std::span<double> dx);

// Exact (erf) GELU and its derivative.
double gelu(double x);
double gelu_grad(double x);

}  // namespace extremecast
