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
#include <string_view>
#include <vector>

namespace extremecast {

struct LossConfig {
  double alpha_high = 2.0;
  double alpha_low = 2.0;
  double beta = 0.5;
  double q_high = 0.95;
  double q_low = 0.05;

  void validate() const;
};

struct LossResult {
  double loss = 0.0;
  std::vector<double> weights;
  std::vector<double> grad;  // d(loss)/d(pred)
};

// Percentile-weighted squared error. Targets strictly above the batch q_high
// quantile get alpha_high, strictly below q_low get alpha_low, the rest beta.
LossResult extreme_weather_loss(std::span<const double> pred, std::span<const double> target,
                                const LossConfig& cfg);

// Mean of 0.5 e^2 for |e| <= delta, delta (|e| - delta/2) otherwise.
LossResult huber_loss(std::span<const double> pred, std::span<const double> target, double delta = 1.0);

enum class LossKind { Extreme, Mse, Huber };
LossKind parse_loss_kind(std::string_view name);
const char* loss_kind_name(LossKind kind);

LossResult compute_loss(LossKind kind, std::span<const double> pred, std::span<const double> target,
                        const LossConfig& cfg);

}  // namespace extremecast
