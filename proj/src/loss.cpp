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

#include "extremecast/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "extremecast/errors.hpp"
#include "extremecast/quantile.hpp"

namespace extremecast {

void LossConfig::validate() const {
  if (!(q_low > 0.0 && q_low < q_high && q_high < 1.0)) {
    throw ConfigError("training.loss.q_low", "need 0 < q_low < q_high < 1");
  }
  if (!(alpha_high > 0.0)) throw ConfigError("training.loss.alpha_high", "must be > 0");
  if (!(alpha_low > 0.0)) throw ConfigError("training.loss.alpha_low", "must be > 0");
  if (!(beta > 0.0)) throw ConfigError("training.loss.beta", "must be > 0");
}

LossResult extreme_weather_loss(std::span<const double> pred, std::span<const double> target,
                                const LossConfig& cfg) {
  if (pred.size() != target.size()) throw std::invalid_argument("prediction/target length mismatch");
  if (target.size() < 2) throw std::invalid_argument("extreme weather loss needs a batch of at least 2");
  const std::vector<double> t(target.begin(), target.end());
  const double hi = quantile(t, cfg.q_high);
  const double lo = quantile(t, cfg.q_low);
  const double n = static_cast<double>(t.size());
  LossResult r;
  r.weights.resize(t.size());
  r.grad.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double w = t[i] > hi ? cfg.alpha_high : (t[i] < lo ? cfg.alpha_low : cfg.beta);
    const double e = pred[i] - t[i];
    r.weights[i] = w;
    r.loss += w * e * e;
    r.grad[i] = 2.0 * w * e / n;
  }
  r.loss /= n;
  return r;
}

LossResult huber_loss(std::span<const double> pred, std::span<const double> target, double delta) {
  if (pred.size() != target.size()) throw std::invalid_argument("prediction/target length mismatch");
  if (target.empty()) throw std::invalid_argument("huber loss needs a non-empty batch");
  const double n = static_cast<double>(target.size());
  LossResult r;
  r.weights.assign(target.size(), 1.0);
  r.grad.resize(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double e = pred[i] - target[i];
    if (std::abs(e) <= delta) {
      r.loss += 0.5 * e * e;
      r.grad[i] = e / n;
    } else {
      r.loss += delta * (std::abs(e) - 0.5 * delta);
      r.grad[i] = delta * (e > 0 ? 1.0 : -1.0) / n;
    }
  }
  r.loss /= n;
  return r;
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "extreme") return LossKind::Extreme;
  if (name == "mse") return LossKind::Mse;
  if (name == "huber") return LossKind::Huber;
  throw ConfigError("training.loss.kind", "unknown loss '" + std::string(name) + "' (extreme|mse|huber)");
}

const char* loss_kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::Extreme: return "extreme";
    case LossKind::Mse: return "mse";
    case LossKind::Huber: return "huber";
  }
  return "extreme";
}

LossResult compute_loss(LossKind kind, std::span<const double> pred, std::span<const double> target,
                        const LossConfig& cfg) {
  switch (kind) {
    case LossKind::Extreme: return extreme_weather_loss(pred, target, cfg);
    case LossKind::Mse: {
      LossConfig flat = cfg;
      flat.alpha_high = flat.alpha_low = flat.beta = 1.0;
      return extreme_weather_loss(pred, target, flat);
    }
    case LossKind::Huber: return huber_loss(pred, target);
  }
  throw std::invalid_argument("unknown loss kind");
}

}  // namespace extremecast
