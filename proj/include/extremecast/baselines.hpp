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
#include <vector>

#include "extremecast/forecaster.hpp"
#include "extremecast/layers.hpp"

namespace extremecast {

// Forecast = last scaled target value in the window.
class Persistence final : public Forecaster {
 public:
  explicit Persistence(std::size_t target_index) : target_index_(target_index) {}
  ModelKind kind() const override { return ModelKind::Persistence; }
  double forward(const Tensor& x, Mode mode, Rng* dropout,
                 std::unique_ptr<ForwardCache>* cache) const override;
  void backward(const ForwardCache&, double) override {}
  std::unique_ptr<Forecaster> clone() const override { return std::make_unique<Persistence>(*this); }
  std::size_t target_index() const noexcept { return target_index_; }

 private:
  std::size_t target_index_;
};

struct TcnConfig {
  std::vector<std::size_t> filters{16, 32, 64};
  std::vector<std::size_t> dilations{1, 2, 4};
  std::size_t kernel = 3;
  double dropout_rate = 0.2;
  std::size_t input_dim = 0;

  void validate() const;
};

struct TcnCache : ForwardCache {
  struct Block {
    Tensor input;    // [L x c_in]
    Tensor taps;     // [L x kernel*c_in], zero-padded on the left
    Tensor xhat;     // [L x c_out]
    std::vector<double> inv_std;
    Tensor norm;     // [L x c_out] layer-norm output
    std::vector<double> mask;
    Tensor output;   // [L x c_out]
  };
  std::vector<Block> blocks;
  double y = 0.0;
};

// Causal dilated convolution blocks: conv -> layer norm -> GELU -> dropout,
// plus a residual (1x1 projection when widths differ). Linear head on the
// last timestep.
class Tcn final : public Forecaster {
 public:
  explicit Tcn(const TcnConfig& config);
  ModelKind kind() const override { return ModelKind::Tcn; }
  double forward(const Tensor& x, Mode mode, Rng* dropout,
                 std::unique_ptr<ForwardCache>* cache) const override;
  void backward(const ForwardCache& cache, double dy) override;
  std::unique_ptr<Forecaster> clone() const override { return std::make_unique<Tcn>(*this); }
  const TcnConfig& config() const noexcept { return config_; }

  // Block activations, used to audit causality.
  TcnCache activations(const Tensor& x) const;

 private:
  struct Block {
    Linear conv;
    LayerNorm norm;
    Linear projection;  // weight == kNoParam when the residual is the identity
    std::size_t in = 0, out = 0, dilation = 1;
  };
  void run(const Tensor& x, Mode mode, Rng* dropout, TcnCache& c) const;

  TcnConfig config_;
  std::vector<Block> blocks_;
  Linear head_;
};

struct NBeatsConfig {
  std::size_t stacks = 4;
  std::size_t fc_layers = 2;
  std::size_t units = 64;
  std::size_t lookback = 30;
  std::size_t target_index = 0;

  void validate() const;
};

struct NBeatsCache : ForwardCache {
  struct Stack {
    std::vector<double> input;                 // residual entering the stack
    std::vector<std::vector<double>> pre;      // pre-activation per FC layer
    std::vector<std::vector<double>> hidden;   // GELU output per FC layer
    std::vector<double> backcast;
    double forecast = 0.0;
  };
  std::vector<Stack> stacks;
  double y = 0.0;
};

// Univariate N-BEATS over the scaled target column of the window.
class NBeats final : public Forecaster {
 public:
  explicit NBeats(const NBeatsConfig& config);
  ModelKind kind() const override { return ModelKind::NBeats; }
  double forward(const Tensor& x, Mode mode, Rng* dropout,
                 std::unique_ptr<ForwardCache>* cache) const override;
  void backward(const ForwardCache& cache, double dy) override;
  std::unique_ptr<Forecaster> clone() const override { return std::make_unique<NBeats>(*this); }
  const NBeatsConfig& config() const noexcept { return config_; }

  // Per-stack forecasts; their sum is the model output.
  std::vector<double> stack_forecasts(const Tensor& x) const;

  struct Stack {
    std::vector<Linear> fc;
    Linear backcast, forecast;
  };
  const std::vector<Stack>& stacks() const noexcept { return stacks_; }

 private:
  void run(const Tensor& x, NBeatsCache& c) const;

  NBeatsConfig config_;
  std::vector<Stack> stacks_;
};

}  // namespace extremecast
