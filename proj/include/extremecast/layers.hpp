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

#include <string>
#include <vector>

#include "extremecast/params.hpp"
#include "extremecast/rng.hpp"

namespace extremecast {

inline constexpr std::size_t kNoParam = static_cast<std::size_t>(-1);

// y = W x + b with W [out x in].
struct Linear {
  std::size_t weight = kNoParam;
  std::size_t bias = kNoParam;
  std::size_t in = 0;
  std::size_t out = 0;

  static Linear create(ParamStore& store, const std::string& name, std::size_t in, std::size_t out,
                       bool with_bias = true);

  // Overwrites y.
  void forward(const ParamStore& store, const double* x, double* y) const;
  // Accumulates parameter gradients; adds W^T dy into dx when dx is non-null.
  void backward(ParamStore& store, const double* x, const double* dy, double* dx) const;
};

// Inverted dropout mask: entries are 0 or 1/(1-p). An empty mask is the
// identity (eval mode, p == 0, or no rng).
std::vector<double> dropout_mask(Rng* rng, double p, std::size_t n);
void apply_mask(const std::vector<double>& mask, double* x, std::size_t n);

// Per-vector layer normalisation with learnable gain and shift.
struct LayerNorm {
  std::size_t gain = kNoParam;
  std::size_t shift = kNoParam;
  std::size_t dim = 0;
  double eps = 1e-5;

  static LayerNorm create(ParamStore& store, const std::string& name, std::size_t dim);
  // Writes the normalised (pre-affine) vector to xhat and returns 1/sqrt(var+eps).
  double forward(const ParamStore& store, const double* x, double* xhat, double* y) const;
  void backward(ParamStore& store, const double* xhat, double inv_std, const double* dy, double* dx) const;
};

}  // namespace extremecast
