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

#include "extremecast/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "extremecast/errors.hpp"

namespace extremecast {

void OptimConfig::validate() const {
  if (!(lr_max > lr_min && lr_min >= 0.0)) throw ConfigError("training.optim.lr_max", "need lr_max > lr_min >= 0");
  if (!(weight_decay >= 0.0)) throw ConfigError("training.optim.weight_decay", "must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("training.optim.beta1", "must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("training.optim.beta2", "must be in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("training.optim.eps", "must be > 0");
  if (t0 < 1) throw ConfigError("training.optim.t0", "must be >= 1");
  if (t_mult < 1) throw ConfigError("training.optim.t_mult", "must be >= 1");
  if (!(clip_norm > 0.0)) throw ConfigError("training.optim.clip_norm", "must be > 0");
}

AdamW::AdamW(const ParamStore& params, const OptimConfig& config) : config_(config) {
  for (const auto& p : params.all()) {
    m_.emplace_back(p.value.size(), 0.0);
    v_.emplace_back(p.value.size(), 0.0);
  }
}

void AdamW::step(ParamStore& params, double lr) {
  ++step_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Param& p = params[i];
    const double wd = p.decay ? config_.weight_decay : 0.0;
    double* theta = p.value.data();
    const double* g = p.grad.data();
    auto& m = m_[i];
    auto& v = v_[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      m[j] = b1 * m[j] + (1.0 - b1) * g[j];
      v[j] = b2 * v[j] + (1.0 - b2) * g[j] * g[j];
      const double mhat = m[j] / c1;
      const double vhat = v[j] / c2;
      theta[j] -= lr * (mhat / (std::sqrt(vhat) + config_.eps)) + lr * wd * theta[j];
    }
  }
}

double cosine_warm_restart_lr(int epoch, const OptimConfig& config) {
  if (epoch < 0) throw std::invalid_argument("epoch must be >= 0");
  long cycle = config.t0;
  long t_cur = epoch;
  while (t_cur >= cycle) {
    t_cur -= cycle;
    cycle *= config.t_mult;
  }
  const double frac = static_cast<double>(t_cur) / static_cast<double>(cycle);
  return config.lr_min + 0.5 * (config.lr_max - config.lr_min) * (1.0 + std::cos(std::numbers::pi * frac));
}

double clip_gradients(ParamStore& params, double max_norm) {
  double sq = 0.0;
  for (const auto& p : params.all()) {
    for (double g : p.grad.values()) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& p : params.all()) {
      for (double& g : p.grad.values()) g *= scale;
    }
  }
  return norm;
}

}  // namespace extremecast
