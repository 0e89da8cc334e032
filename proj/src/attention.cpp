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

#include "extremecast/attention.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremecast/activations.hpp"

namespace extremecast {

MultiHeadAttention MultiHeadAttention::create(ParamStore& store, const std::string& name, std::size_t dim,
                                              std::size_t heads) {
  if (heads == 0 || dim % heads != 0) throw std::invalid_argument("attention width not divisible by heads");
  MultiHeadAttention a;
  a.dim = dim;
  a.heads = heads;
  a.query = Linear::create(store, name + ".w_q", dim, dim, false);
  a.key = Linear::create(store, name + ".w_k", dim, dim, false);
  a.value = Linear::create(store, name + ".w_v", dim, dim, false);
  a.output = Linear::create(store, name + ".w_o", dim, dim, false);
  return a;
}

void MultiHeadAttention::forward(const ParamStore& store, const Tensor& e, Cache& cache) const {
  const std::size_t length = e.rows();
  const std::size_t dh = dim / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  cache.q = Tensor::matrix(length, dim);
  cache.k = Tensor::matrix(length, dim);
  cache.v = Tensor::matrix(length, dim);
  cache.context = Tensor::matrix(length, dim);
  cache.z = Tensor::matrix(length, dim);
  for (std::size_t t = 0; t < length; ++t) {
    query.forward(store, e.row(t), cache.q.row(t));
    key.forward(store, e.row(t), cache.k.row(t));
    value.forward(store, e.row(t), cache.v.row(t));
  }
  cache.attention.assign(heads, Tensor::matrix(length, length));
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dh;
    Tensor& a = cache.attention[h];
    for (std::size_t t = 0; t < length; ++t) {
      double* row = a.row(t);
      for (std::size_t s = 0; s < length; ++s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dh; ++j) acc += cache.q.at(t, off + j) * cache.k.at(s, off + j);
        row[s] = acc * scale;
      }
      softmax_inplace({row, length});
      double* ctx = cache.context.row(t) + off;
      for (std::size_t s = 0; s < length; ++s) {
        const double w = row[s];
        const double* vs = cache.v.row(s) + off;
        for (std::size_t j = 0; j < dh; ++j) ctx[j] += w * vs[j];
      }
    }
  }
  for (std::size_t t = 0; t < length; ++t) output.forward(store, cache.context.row(t), cache.z.row(t));
}

void MultiHeadAttention::backward(ParamStore& store, const Tensor& e, const Cache& cache, const Tensor& dz,
                                  Tensor& de) const {
  const std::size_t length = e.rows();
  const std::size_t dh = dim / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Tensor dctx = Tensor::matrix(length, dim);
  for (std::size_t t = 0; t < length; ++t) output.backward(store, cache.context.row(t), dz.row(t), dctx.row(t));
  Tensor dq = Tensor::matrix(length, dim);
  Tensor dk = Tensor::matrix(length, dim);
  Tensor dv = Tensor::matrix(length, dim);
  std::vector<double> da(length), ds(length);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dh;
    const Tensor& a = cache.attention[h];
    for (std::size_t t = 0; t < length; ++t) {
      const double* dc = dctx.row(t) + off;
      for (std::size_t s = 0; s < length; ++s) {
        const double* vs = cache.v.row(s) + off;
        double* dvs = dv.row(s) + off;
        double acc = 0.0;
        for (std::size_t j = 0; j < dh; ++j) {
          acc += dc[j] * vs[j];
          dvs[j] += a.at(t, s) * dc[j];
        }
        da[s] = acc;
      }
      std::fill(ds.begin(), ds.end(), 0.0);
      softmax_backward({a.row(t), length}, da, ds);
      for (std::size_t s = 0; s < length; ++s) {
        const double g = ds[s] * scale;
        for (std::size_t j = 0; j < dh; ++j) {
          dq.at(t, off + j) += g * cache.k.at(s, off + j);
          dk.at(s, off + j) += g * cache.q.at(t, off + j);
        }
      }
    }
  }
  for (std::size_t t = 0; t < length; ++t) {
    query.backward(store, e.row(t), dq.row(t), de.row(t));
    key.backward(store, e.row(t), dk.row(t), de.row(t));
    value.backward(store, e.row(t), dv.row(t), de.row(t));
  }
}

}  // namespace extremecast
