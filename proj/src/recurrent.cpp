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

#include "extremecast/recurrent.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/activations.hpp"
#include "extremecast/kernels.hpp"

namespace extremecast {

namespace {

inline std::size_t step_index(std::size_t s, std::size_t length, bool reverse) {
  return reverse ? length - 1 - s : s;
}

}  // namespace

LstmDirection LstmDirection::create(ParamStore& store, const std::string& name, std::size_t input,
                                    std::size_t hidden, bool reverse) {
  LstmDirection d;
  d.input = input;
  d.hidden = hidden;
  d.reverse = reverse;
  d.w_ih = store.add_weight(name + ".w_ih", {4 * hidden, input});
  d.w_hh = store.add_weight(name + ".w_hh", {4 * hidden, hidden});
  d.bias = store.add_bias(name + ".bias", {4 * hidden});
  return d;
}

void LstmDirection::forward(const ParamStore& store, const Tensor& x, Cache& cache) const {
  const std::size_t length = x.rows();
  const std::size_t h4 = 4 * hidden;
  cache.gates = Tensor::matrix(length, h4);
  cache.c = Tensor::matrix(length, hidden);
  cache.tanh_c = Tensor::matrix(length, hidden);
  cache.h = Tensor::matrix(length, hidden);
  std::vector<double> zero(hidden, 0.0);
  const double* h_prev = zero.data();
  const double* c_prev = zero.data();
  for (std::size_t s = 0; s < length; ++s) {
    const std::size_t t = step_index(s, length, reverse);
    double* g = cache.gates.row(t);
    std::copy_n(store.value(bias), h4, g);
    kernels::gemv(store.value(w_ih), h4, input, x.row(t), g);
    kernels::gemv(store.value(w_hh), h4, hidden, h_prev, g);
    double* c = cache.c.row(t);
    double* tc = cache.tanh_c.row(t);
    double* h = cache.h.row(t);
    for (std::size_t j = 0; j < hidden; ++j) {
      const double ig = sigmoid(g[j]);
      const double fg = sigmoid(g[hidden + j]);
      const double gg = std::tanh(g[2 * hidden + j]);
      const double og = sigmoid(g[3 * hidden + j]);
      g[j] = ig;
      g[hidden + j] = fg;
      g[2 * hidden + j] = gg;
      g[3 * hidden + j] = og;
      c[j] = fg * c_prev[j] + ig * gg;
      tc[j] = std::tanh(c[j]);
      h[j] = og * tc[j];
    }
    h_prev = h;
    c_prev = c;
  }
}

void LstmDirection::backward(ParamStore& store, const Tensor& x, const Cache& cache, const Tensor& dh,
                             Tensor& dx) const {
  const std::size_t length = x.rows();
  const std::size_t h4 = 4 * hidden;
  std::vector<double> dh_next(hidden, 0.0), dc_next(hidden, 0.0), dz(h4), zero(hidden, 0.0);
  for (std::size_t s = length; s-- > 0;) {
    const std::size_t t = step_index(s, length, reverse);
    const bool first = s == 0;
    const std::size_t tp = first ? 0 : step_index(s - 1, length, reverse);
    const double* h_prev = first ? zero.data() : cache.h.row(tp);
    const double* c_prev = first ? zero.data() : cache.c.row(tp);
    const double* g = cache.gates.row(t);
    const double* tc = cache.tanh_c.row(t);
    const double* dh_out = dh.row(t);
    for (std::size_t j = 0; j < hidden; ++j) {
      const double ig = g[j], fg = g[hidden + j], gg = g[2 * hidden + j], og = g[3 * hidden + j];
      const double dht = dh_out[j] + dh_next[j];
      const double dct = dht * og * (1.0 - tc[j] * tc[j]) + dc_next[j];
      dz[j] = dct * gg * ig * (1.0 - ig);
      dz[hidden + j] = dct * c_prev[j] * fg * (1.0 - fg);
      dz[2 * hidden + j] = dct * ig * (1.0 - gg * gg);
      dz[3 * hidden + j] = dht * tc[j] * og * (1.0 - og);
      dc_next[j] = dct * fg;
    }
    kernels::axpy(1.0, dz.data(), store.grad(bias), h4);
    kernels::ger(store.grad(w_ih), h4, input, dz.data(), x.row(t));
    kernels::ger(store.grad(w_hh), h4, hidden, dz.data(), h_prev);
    kernels::gemv_t(store.value(w_ih), h4, input, dz.data(), dx.row(t));
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    kernels::gemv_t(store.value(w_hh), h4, hidden, dz.data(), dh_next.data());
  }
}

GruDirection GruDirection::create(ParamStore& store, const std::string& name, std::size_t input,
                                  std::size_t hidden, bool reverse) {
  GruDirection d;
  d.input = input;
  d.hidden = hidden;
  d.reverse = reverse;
  d.w_ih = store.add_weight(name + ".w_ih", {3 * hidden, input});
  d.w_hh = store.add_weight(name + ".w_hh", {3 * hidden, hidden});
  d.b_ih = store.add_bias(name + ".b_ih", {3 * hidden});
  d.b_hh = store.add_bias(name + ".b_hh", {3 * hidden});
  return d;
}

void GruDirection::forward(const ParamStore& store, const Tensor& x, Cache& cache) const {
  const std::size_t length = x.rows();
  const std::size_t h3 = 3 * hidden;
  cache.r = Tensor::matrix(length, hidden);
  cache.z = Tensor::matrix(length, hidden);
  cache.n = Tensor::matrix(length, hidden);
  cache.hn = Tensor::matrix(length, hidden);
  cache.h = Tensor::matrix(length, hidden);
  std::vector<double> zero(hidden, 0.0), gi(h3), gh(h3);
  const double* h_prev = zero.data();
  for (std::size_t s = 0; s < length; ++s) {
    const std::size_t t = step_index(s, length, reverse);
    std::copy_n(store.value(b_ih), h3, gi.data());
    std::copy_n(store.value(b_hh), h3, gh.data());
    kernels::gemv(store.value(w_ih), h3, input, x.row(t), gi.data());
    kernels::gemv(store.value(w_hh), h3, hidden, h_prev, gh.data());
    double* r = cache.r.row(t);
    double* z = cache.z.row(t);
    double* n = cache.n.row(t);
    double* hn = cache.hn.row(t);
    double* h = cache.h.row(t);
    for (std::size_t j = 0; j < hidden; ++j) {
      r[j] = sigmoid(gi[j] + gh[j]);
      z[j] = sigmoid(gi[hidden + j] + gh[hidden + j]);
      hn[j] = gh[2 * hidden + j];
      n[j] = std::tanh(gi[2 * hidden + j] + r[j] * hn[j]);
      h[j] = (1.0 - z[j]) * n[j] + z[j] * h_prev[j];
    }
    h_prev = h;
  }
}

void GruDirection::backward(ParamStore& store, const Tensor& x, const Cache& cache, const Tensor& dh,
                            Tensor& dx) const {
  const std::size_t length = x.rows();
  const std::size_t h3 = 3 * hidden;
  std::vector<double> dh_next(hidden, 0.0), dgi(h3), dgh(h3), zero(hidden, 0.0);
  for (std::size_t s = length; s-- > 0;) {
    const std::size_t t = step_index(s, length, reverse);
    const double* h_prev = s == 0 ? zero.data() : cache.h.row(step_index(s - 1, length, reverse));
    const double* r = cache.r.row(t);
    const double* z = cache.z.row(t);
    const double* n = cache.n.row(t);
    const double* hn = cache.hn.row(t);
    const double* dh_out = dh.row(t);
    for (std::size_t j = 0; j < hidden; ++j) {
      const double dht = dh_out[j] + dh_next[j];
      const double dn_pre = dht * (1.0 - z[j]) * (1.0 - n[j] * n[j]);
      const double dz_pre = dht * (h_prev[j] - n[j]) * z[j] * (1.0 - z[j]);
      const double dr_pre = dn_pre * hn[j] * r[j] * (1.0 - r[j]);
      dgi[j] = dr_pre;
      dgh[j] = dr_pre;
      dgi[hidden + j] = dz_pre;
      dgh[hidden + j] = dz_pre;
      dgi[2 * hidden + j] = dn_pre;
      dgh[2 * hidden + j] = dn_pre * r[j];
      dh_next[j] = dht * z[j];
    }
    kernels::axpy(1.0, dgi.data(), store.grad(b_ih), h3);
    kernels::axpy(1.0, dgh.data(), store.grad(b_hh), h3);
    kernels::ger(store.grad(w_ih), h3, input, dgi.data(), x.row(t));
    kernels::ger(store.grad(w_hh), h3, hidden, dgh.data(), h_prev);
    kernels::gemv_t(store.value(w_ih), h3, input, dgi.data(), dx.row(t));
    kernels::gemv_t(store.value(w_hh), h3, hidden, dgh.data(), dh_next.data());
  }
}

template <class Direction>
BiRecurrent<Direction> BiRecurrent<Direction>::create(ParamStore& store, const std::string& name,
                                                      std::size_t input, std::size_t hidden,
                                                      std::size_t layers) {
  BiRecurrent rnn;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = l == 0 ? input : 2 * hidden;
    const std::string prefix = name + ".l" + std::to_string(l);
    rnn.forward_dirs.push_back(Direction::create(store, prefix + ".fwd", in, hidden, false));
    rnn.backward_dirs.push_back(Direction::create(store, prefix + ".bwd", in, hidden, true));
  }
  return rnn;
}

template <class Direction>
void BiRecurrent<Direction>::forward(const ParamStore& store, const Tensor& x, Cache& cache) const {
  const std::size_t layers = forward_dirs.size();
  const std::size_t length = x.rows();
  const std::size_t h = hidden();
  cache.inputs.assign(1, x);
  cache.fwd.resize(layers);
  cache.bwd.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    forward_dirs[l].forward(store, cache.inputs[l], cache.fwd[l]);
    backward_dirs[l].forward(store, cache.inputs[l], cache.bwd[l]);
    Tensor out = Tensor::matrix(length, 2 * h);
    for (std::size_t t = 0; t < length; ++t) {
      std::copy_n(cache.fwd[l].h.row(t), h, out.row(t));
      std::copy_n(cache.bwd[l].h.row(t), h, out.row(t) + h);
    }
    if (l + 1 < layers) {
      cache.inputs.push_back(std::move(out));
    } else {
      cache.output = std::move(out);
    }
  }
}

template <class Direction>
void BiRecurrent<Direction>::backward(ParamStore& store, const Cache& cache, const Tensor& d_output,
                                      Tensor& dx) const {
  const std::size_t h = hidden();
  const std::size_t length = d_output.rows();
  Tensor d_out = d_output;
  for (std::size_t l = forward_dirs.size(); l-- > 0;) {
    Tensor dh_f = Tensor::matrix(length, h);
    Tensor dh_b = Tensor::matrix(length, h);
    for (std::size_t t = 0; t < length; ++t) {
      std::copy_n(d_out.row(t), h, dh_f.row(t));
      std::copy_n(d_out.row(t) + h, h, dh_b.row(t));
    }
    const Tensor& in = cache.inputs[l];
    Tensor d_in = l == 0 ? Tensor() : Tensor::matrix(length, in.cols());
    Tensor& target = l == 0 ? dx : d_in;
    forward_dirs[l].backward(store, in, cache.fwd[l], dh_f, target);
    backward_dirs[l].backward(store, in, cache.bwd[l], dh_b, target);
    if (l > 0) d_out = std::move(d_in);
  }
}

template struct BiRecurrent<LstmDirection>;
template struct BiRecurrent<GruDirection>;

}  // namespace extremecast
