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

#include "extremecast/params.hpp"

#include <cmath>
#include <stdexcept>

namespace extremecast {

std::size_t ParamStore::add(std::string name, Shape shape, bool decay, Init init) {
  if (find(name) != size()) throw std::invalid_argument("duplicate parameter " + name);
  Tensor value(shape);
  Tensor grad(std::move(shape));
  params_.push_back(Param{std::move(name), std::move(value), std::move(grad), decay, init});
  return params_.size() - 1;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

std::size_t ParamStore::find(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return i;
  }
  return params_.size();
}

void ParamStore::zero_grad() {
  for (auto& p : params_) p.grad.fill(0.0);
}

void ParamStore::initialize(Rng& rng) {
  for (auto& p : params_) {
    switch (p.init) {
      case Init::Zeros: p.value.fill(0.0); break;
      case Init::Ones: p.value.fill(1.0); break;
      case Init::FanIn: {
        const double bound = 1.0 / std::sqrt(static_cast<double>(p.value.shape().back()));
        for (double& v : p.value.values()) v = -bound + 2.0 * bound * rng.uniform01();
        break;
      }
    }
  }
}

void ParamStore::copy_values_from(const ParamStore& other) {
  if (other.size() != size()) throw std::invalid_argument("parameter layout mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (other.params_[i].value.shape() != params_[i].value.shape()) {
      throw std::invalid_argument("parameter shape mismatch for " + params_[i].name);
    }
    params_[i].value = other.params_[i].value;
  }
}

}  // namespace extremecast
