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

#include <memory>
#include <string>
#include <string_view>

#include "extremecast/params.hpp"
#include "extremecast/rng.hpp"
#include "extremecast/tensor.hpp"

namespace extremecast {

enum class Mode { Train, Eval };
enum class ModelKind { Mmwstm, Tcn, NBeats, Persistence };

std::string model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

// Activations a model keeps between forward and backward.
struct ForwardCache {
  virtual ~ForwardCache() = default;
};

// Single-window, single-output forecaster over a scaled [L x F] window.
class Forecaster {
 public:
  virtual ~Forecaster() = default;

  virtual ModelKind kind() const = 0;
  // Train mode draws dropout masks from `dropout` (none if null). When
  // `cache` is non-null it receives what backward() needs.
  virtual double forward(const Tensor& x, Mode mode, Rng* dropout,
                         std::unique_ptr<ForwardCache>* cache) const = 0;
  // Accumulates dy * d(yhat)/d(theta) into params().grad.
  virtual void backward(const ForwardCache& cache, double dy) = 0;
  virtual std::unique_ptr<Forecaster> clone() const = 0;

  double predict(const Tensor& x) const { return forward(x, Mode::Eval, nullptr, nullptr); }
  bool trainable() const { return params_.size() > 0; }

  ParamStore& params() noexcept { return params_; }
  const ParamStore& params() const noexcept { return params_; }

 protected:
  ParamStore params_;
};

}  // namespace extremecast
