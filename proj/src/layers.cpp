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

#include "extremecast/layers.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/kernels.hpp"

namespace extremecast {

Linear Linear::create(ParamStore& store, const std::string& name, std::size_t in, std::size_t out,
                      bool with_bias) {
  Linear l;
  l.in = in;
  l.out = out;
  l.weight = store.add_weight(name + ".weight", {out, in});
  if (with_bias) l.bias = store.add_bias(name + ".bias", {out});
  return l;
}

void Linear::forward(const ParamStore& store, const double* x, double* y) const {
  if (bias != kNoParam) {
    std::copy_n(store.value(bias), out, y);
  } else {
    std::fill_n(y, out, 0.0);
  }
  kernels::gemv(store.value(weight), out, in, x, y);
}

void Linear::backward(ParamStore& store, const double* x, const double* dy, double* dx) const {
  kernels::ger(store.grad(weight), out, in, dy, x);
  if (bias != kNoParam) kernels::axpy(1.0, dy, store.grad(bias), out);
  if (dx != nullptr) kernels::gemv_t(store.value(weight), out, in, dy, dx);
}

std::vector<double> dropout_mask(Rng* rng, double p, std::size_t n) {
  if (rng == nullptr || p <= 0.0) return {};
  std::vector<double> mask(n);
  const double keep = 1.0 / (1.0 - p);
  for (double& m : mask) m = rng->uniform01() < p ? 0.0 : keep;
  return mask;
}

void apply_mask(const std::vector<double>& mask, double* x, std::size_t n) {
  if (mask.empty()) return;
  for (std::size_t i = 0; i < n; ++i) x[i] *= mask[i];
}

LayerNorm LayerNorm::create(ParamStore& store, const std::string& name, std::size_t dim) {
  LayerNorm ln;
  ln.dim = dim;
  ln.gain = store.add(name + ".gain", {dim}, false, Init::Ones);
  ln.shift = store.add_bias(name + ".shift", {dim});
  return ln;
}

double LayerNorm::forward(const ParamStore& store, const double* x, double* xhat, double* y) const {
  double mu = 0.0;
  for (std::size_t i = 0; i < dim; ++i) mu += x[i];
  mu /= static_cast<double>(dim);
  double var = 0.0;
  for (std::size_t i = 0; i < dim; ++i) var += (x[i] - mu) * (x[i] - mu);
  var /= static_cast<double>(dim);
  const double inv_std = 1.0 / std::sqrt(var + eps);
  const double* g = store.value(gain);
  const double* b = store.value(shift);
  for (std::size_t i = 0; i < dim; ++i) {
    xhat[i] = (x[i] - mu) * inv_std;
    y[i] = g[i] * xhat[i] + b[i];
  }
  return inv_std;
}

void LayerNorm::backward(ParamStore& store, const double* xhat, double inv_std, const double* dy,
                         double* dx) const {
  const double* g = store.value(gain);
  double* dg = store.grad(gain);
  double* db = store.grad(shift);
  double mean_d = 0.0, mean_dx = 0.0;
  std::vector<double> dxhat(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    dg[i] += dy[i] * xhat[i];
    db[i] += dy[i];
    dxhat[i] = dy[i] * g[i];
    mean_d += dxhat[i];
    mean_dx += dxhat[i] * xhat[i];
  }
  mean_d /= static_cast<double>(dim);
  mean_dx /= static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) dx[i] += inv_std * (dxhat[i] - mean_d - xhat[i] * mean_dx);
}

}  // namespace extremecast
