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

#include "extremecast/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremecast/errors.hpp"

namespace extremecast {

GradReport grad_check(ParamStore& params, const std::function<double()>& loss,
                      const std::function<void()>& analytic, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("grad_check eps must be positive");
  GradReport report;
  if (params.scalar_count() == 0) return report;

  params.zero_grad();
  analytic();
  std::vector<Tensor> grads;
  grads.reserve(params.size());
  for (const auto& p : params.all()) grads.push_back(p.grad);

  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Param& p = params[pi];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double saved = p.value[i];
      p.value[i] = saved + eps;
      const double up = loss();
      p.value[i] = saved - eps;
      const double down = loss();
      p.value[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw NumericError("non-finite loss when perturbing " + p.name + "[" + std::to_string(i) + "]");
      }
      const double numeric = (up - down) / (2.0 * eps);
      const double a = grads[pi][i];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      const double rel = std::abs(a - numeric) / denom;
      ++report.checked;
      if (report.checked == 1 || rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_param = p.name;
        report.worst_index = i;
        report.worst_analytic = a;
        report.worst_numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace extremecast
