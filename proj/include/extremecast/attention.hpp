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

#include "extremecast/layers.hpp"
#include "extremecast/params.hpp"
#include "extremecast/tensor.hpp"

namespace extremecast {

// Unmasked multi-head scaled dot-product self-attention without biases or
// positional encoding: Z = concat_h(softmax(Q_h K_h^T / sqrt(D/heads)) V_h) W_O.
struct MultiHeadAttention {
  Linear query, key, value, output;
  std::size_t dim = 0;
  std::size_t heads = 1;

  struct Cache {
    Tensor q, k, v;                 // [L x D]
    std::vector<Tensor> attention;  // per head [L x L]
    Tensor context;                 // [L x D]
    Tensor z;                       // [L x D]
  };

  static MultiHeadAttention create(ParamStore& store, const std::string& name, std::size_t dim,
                                   std::size_t heads);
  void forward(const ParamStore& store, const Tensor& e, Cache& cache) const;
  // Accumulates into de [L x D].
  void backward(ParamStore& store, const Tensor& e, const Cache& cache, const Tensor& dz, Tensor& de) const;
};

}  // namespace extremecast
