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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "extremecast/grad_check.hpp"
#include "extremecast/loss.hpp"
#include "extremecast/mmwstm_adran.hpp"
#include "extremecast/rng.hpp"
#include "extremecast/tensor.hpp"

namespace fixtures {

inline extremecast::Tensor random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                         double scale = 1.0, const std::string& label = "fixture") {
  extremecast::Rng rng(seed, label);
  extremecast::Tensor t = extremecast::Tensor::matrix(rows, cols);
  for (double& v : t.values()) v = rng.gaussian(0.0, scale);
  return t;
}

// F=6, D=8, H_L=H_G=4, N=3, heads=2, L=8.
inline extremecast::ModelConfig tiny_model() {
  extremecast::ModelConfig c;
  c.input_dim = 6;
  c.embed_dim = 8;
  c.lstm_hidden = 4;
  c.gru_hidden = 4;
  c.n_states = 3;
  c.n_heads = 2;
  c.stream_dim = 4;
  c.lookback = 8;
  return c;
}

// yhat = sum_f coef[f] * x[L-1][f] + bias; a transparent model for diagnostics.
class LinearLast final : public extremecast::Forecaster {
 public:
  LinearLast(std::vector<double> coef, double bias) : coef_(std::move(coef)), bias_(bias) {}
  extremecast::ModelKind kind() const override { return extremecast::ModelKind::Persistence; }
  double forward(const extremecast::Tensor& x, extremecast::Mode, extremecast::Rng*,
                 std::unique_ptr<extremecast::ForwardCache>*) const override {
    double y = bias_;
    for (std::size_t f = 0; f < coef_.size(); ++f) y += coef_[f] * x.at(x.rows() - 1, f);
    return y;
  }
  void backward(const extremecast::ForwardCache&, double) override {}
  std::unique_ptr<extremecast::Forecaster> clone() const override { return std::make_unique<LinearLast>(*this); }

 private:
  std::vector<double> coef_;
  double bias_;
};

inline double batch_loss(const extremecast::Forecaster& model, const std::vector<extremecast::Tensor>& xs,
                         const std::vector<double>& ys, extremecast::LossKind kind) {
  using namespace extremecast;
  Rng dropout(5, "dropout");
  std::vector<double> pred;
  for (const auto& x : xs) pred.push_back(model.forward(x, Mode::Train, &dropout, nullptr));
  return compute_loss(kind, pred, ys, LossConfig{}).loss;
}

inline void batch_backward(extremecast::Forecaster& model, const std::vector<extremecast::Tensor>& xs,
                           const std::vector<double>& ys, extremecast::LossKind kind) {
  using namespace extremecast;
  Rng dropout(5, "dropout");
  std::vector<double> pred;
  std::vector<std::unique_ptr<ForwardCache>> caches(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pred.push_back(model.forward(xs[i], Mode::Train, &dropout, &caches[i]));
  const auto loss = compute_loss(kind, pred, ys, LossConfig{});
  for (std::size_t i = 0; i < xs.size(); ++i) model.backward(*caches[i], loss.grad[i]);
}

// Full-batch gradient check of `kind` loss through the model, dropout masks
// replayed from a fixed stream.
inline extremecast::GradReport model_grad_check(extremecast::Forecaster& model,
                                                const std::vector<extremecast::Tensor>& xs,
                                                const std::vector<double>& ys, extremecast::LossKind kind) {
  return extremecast::grad_check(
      model.params(), [&] { return batch_loss(model, xs, ys, kind); },
      [&] { batch_backward(model, xs, ys, kind); });
}

}  // namespace fixtures
