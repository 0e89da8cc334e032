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
#include "extremecast/tensor.hpp"

namespace extremecast {

// One direction of an LSTM layer. Gate order in the stacked weights: i, f, g, o.
//   i,f,o = sigmoid(.), g = tanh(.), c_t = f*c_{t-1} + i*g, h_t = o*tanh(c_t)
// Zero initial state. A reverse direction walks t = L-1 .. 0 and stores h
// at the timestep it was computed for.
struct LstmDirection {
  std::size_t w_ih = 0, w_hh = 0, bias = 0;
  std::size_t input = 0, hidden = 0;
  bool reverse = false;

  struct Cache {
    Tensor gates;   // [L x 4H] post-activation
    Tensor c;       // [L x H]
    Tensor tanh_c;  // [L x H]
    Tensor h;       // [L x H]
  };

  static LstmDirection create(ParamStore& store, const std::string& name, std::size_t input,
                              std::size_t hidden, bool reverse);
  void forward(const ParamStore& store, const Tensor& x, Cache& cache) const;
  // dh: gradient w.r.t. cache.h; accumulates into dx [L x input].
  void backward(ParamStore& store, const Tensor& x, const Cache& cache, const Tensor& dh, Tensor& dx) const;
};

// One direction of a GRU layer. Gate order: r, z, n.
//   r = sigmoid(Wir x + bir + Whr h + bhr), z likewise,
//   n = tanh(Win x + bin + r*(Whn h + bhn)), h' = (1-z)*n + z*h
struct GruDirection {
  std::size_t w_ih = 0, w_hh = 0, b_ih = 0, b_hh = 0;
  std::size_t input = 0, hidden = 0;
  bool reverse = false;

  struct Cache {
    Tensor r, z, n;  // [L x H]
    Tensor hn;       // [L x H], Whn h_prev + bhn
    Tensor h;        // [L x H]
  };

  static GruDirection create(ParamStore& store, const std::string& name, std::size_t input,
                             std::size_t hidden, bool reverse);
  void forward(const ParamStore& store, const Tensor& x, Cache& cache) const;
  void backward(ParamStore& store, const Tensor& x, const Cache& cache, const Tensor& dh, Tensor& dx) const;
};

// Stacked bidirectional recurrence; each layer's output is [forward | backward]
// per timestep and feeds the next layer.
template <class Direction>
struct BiRecurrent {
  std::vector<Direction> forward_dirs;
  std::vector<Direction> backward_dirs;

  struct Cache {
    std::vector<Tensor> inputs;  // input of each layer
    std::vector<typename Direction::Cache> fwd, bwd;
    Tensor output;               // [L x 2H] of the last layer
  };

  static BiRecurrent create(ParamStore& store, const std::string& name, std::size_t input,
                            std::size_t hidden, std::size_t layers);
  std::size_t hidden() const { return forward_dirs.front().hidden; }
  void forward(const ParamStore& store, const Tensor& x, Cache& cache) const;
  // d_output: [L x 2H] gradient of the last layer's output.
  void backward(ParamStore& store, const Cache& cache, const Tensor& d_output, Tensor& dx) const;
};

using BiLstm = BiRecurrent<LstmDirection>;
using BiGru = BiRecurrent<GruDirection>;

}  // namespace extremecast
