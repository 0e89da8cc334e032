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

#include <functional>
#include <string>

#include "extremecast/params.hpp"

namespace extremecast {

struct GradReport {
  std::size_t checked = 0;
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Compares analytic gradients against central differences for every scalar
// in `params`.
//
// `loss` must be a pure function of the current parameter values.
// `analytic` must leave d(loss)/d(param) in each Param::grad; the checker
// zeroes gradients before calling it. Relative error uses the denominator
// max(|analytic|, |numeric|, 1e-8). Throws NumericError naming the parameter
// if the loss is non-finite at a perturbed point.
GradReport grad_check(ParamStore& params, const std::function<double()>& loss,
                      const std::function<void()>& analytic, double eps = 1e-5);

}  // namespace extremecast
