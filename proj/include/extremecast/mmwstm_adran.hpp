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

#include "extremecast/attention.hpp"
#include "extremecast/forecaster.hpp"
#include "extremecast/layers.hpp"
#include "extremecast/recurrent.hpp"

namespace extremecast {

struct ModelConfig {
  std::size_t input_dim = 0;
  std::size_t embed_dim = 32;
  std::size_t lstm_hidden = 32;
  std::size_t lstm_layers = 2;
  std::size_t gru_hidden = 32;
  std::size_t gru_layers = 2;
  std::size_t n_states = 9;
  std::size_t n_heads = 4;
  std::size_t stream_dim = 32;
  double dropout_rate = 0.2;
  double amp_gain = 1.0;
  std::size_t lookback = 30;

  // Throws ConfigError with a "model." field path.
  void validate() const;
};

// Per-window activations, also used for introspection exports.
struct MmwstmCache : ForwardCache {
  Tensor x;
  Tensor embed;       // [L x D] sigmoid output before dropout
  Tensor e;           // [L x D] after dropout
  std::vector<double> embed_mask;
  BiLstm::Cache lstm;
  Tensor emission;    // [L x N] p_t
  Tensor transition;  // [N x N] T
  Tensor prior;       // [L x N] q_t
  std::vector<double> regime_in;  // [h_L | q_L]
  std::vector<double> o_m;
  MultiHeadAttention::Cache attn;
  Tensor amp_hidden;  // [L x D/2] tanh output before dropout
  std::vector<double> amp_mask;  // [L x D/2]
  std::vector<double> score;     // s_t
  std::vector<double> alpha;     // 1 + a s_t
  Tensor z_amp;       // [L x D]
  BiGru::Cache gru;
  std::vector<double> anomaly_in;  // [h_T^f | h_1^b]
  std::vector<double> o_a;
  std::vector<double> fuse_in;     // [o_M | o_A]
  std::vector<double> gamma;
  std::vector<double> fused;
  double y = 0.0;
};

class MmwstmAdran final : public Forecaster {
 public:
  explicit MmwstmAdran(const ModelConfig& config);

  ModelKind kind() const override { return ModelKind::Mmwstm; }
  double forward(const Tensor& x, Mode mode, Rng* dropout,
                 std::unique_ptr<ForwardCache>* cache) const override;
  void backward(const ForwardCache& cache, double dy) override;
  std::unique_ptr<Forecaster> clone() const override { return std::make_unique<MmwstmAdran>(*this); }

  const ModelConfig& config() const noexcept { return config_; }
  // Eval-mode activations for one window.
  MmwstmCache introspect(const Tensor& x) const;

  // Parameter indices, exposed for tests.
  Linear embedding, emission, regime_out, amp_hidden, amp_out, anomaly_out, fuse, head;
  std::size_t transition_logits = kNoParam;
  BiLstm lstm;
  MultiHeadAttention attention;
  BiGru gru;

 private:
  void run(const Tensor& x, Mode mode, Rng* dropout, MmwstmCache& c) const;
  ModelConfig config_;
};

}  // namespace extremecast
