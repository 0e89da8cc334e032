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

#include <vector>

#include "extremecast/params.hpp"

namespace extremecast {

struct OptimConfig {
  double lr_max = 5e-3;
  double lr_min = 0.0;
  double weight_decay = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int t0 = 10;
  int t_mult = 2;
  double clip_norm = 5.0;

  void validate() const;
};

// Decoupled weight decay; Param::decay selects which tensors decay.
class AdamW {
 public:
  AdamW(const ParamStore& params, const OptimConfig& config);
  void step(ParamStore& params, double lr);
  long steps() const noexcept { return step_; }

 private:
  OptimConfig config_;
  std::vector<std::vector<double>> m_, v_;
  long step_ = 0;
};

// Cosine annealing with warm restarts, evaluated per epoch (epoch >= 0).
double cosine_warm_restart_lr(int epoch, const OptimConfig& config);

// Global L2 norm over all gradients; rescales when above max_norm. Returns the
// pre-clip norm.
double clip_gradients(ParamStore& params, double max_norm);

}  // namespace extremecast
