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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "extremecast/rng.hpp"
#include "extremecast/tensor.hpp"

namespace extremecast {

// Weight matrices: U(-1/sqrt(fan_in), +1/sqrt(fan_in)) with fan_in = last
// dimension. Biases, transition logits: zeros. Normalization gains: ones.
enum class Init { FanIn, Zeros, Ones };

struct Param {
  std::string name;
  Tensor value;
  Tensor grad;
  // AdamW decoupled weight decay applies only when set (weights, not biases).
  bool decay = true;
  Init init = Init::FanIn;
};

// Ordered collection of named learnable tensors. Layers keep indices into it,
// so a model is copied by copying its store.
class ParamStore {
 public:
  std::size_t add(std::string name, Shape shape, bool decay, Init init);
  std::size_t add_weight(std::string name, Shape shape) { return add(std::move(name), std::move(shape), true, Init::FanIn); }
  std::size_t add_bias(std::string name, Shape shape) { return add(std::move(name), std::move(shape), false, Init::Zeros); }

  Param& operator[](std::size_t i) { return params_[i]; }
  const Param& operator[](std::size_t i) const { return params_[i]; }
  double* value(std::size_t i) { return params_[i].value.data(); }
  const double* value(std::size_t i) const { return params_[i].value.data(); }
  double* grad(std::size_t i) { return params_[i].grad.data(); }

  std::size_t size() const noexcept { return params_.size(); }
  std::size_t scalar_count() const;
  std::vector<Param>& all() noexcept { return params_; }
  const std::vector<Param>& all() const noexcept { return params_; }

  // Index of the named parameter, or size() if absent.
  std::size_t find(std::string_view name) const;

  void zero_grad();
  // Applies each parameter's Init policy, drawing in declaration order.
  void initialize(Rng& rng);
  // Copies values (not gradients) from a store with identical layout.
  void copy_values_from(const ParamStore& other);

 private:
  std::vector<Param> params_;
};

}  // namespace extremecast
