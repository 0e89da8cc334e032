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

#include "extremecast/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/activations.hpp"
#include "extremecast/errors.hpp"

namespace extremecast {

double Persistence::forward(const Tensor& x, Mode, Rng*, std::unique_ptr<ForwardCache>* cache) const {
  if (x.rank() != 2 || target_index_ >= x.cols()) throw DataError("tempmax feature absent from window");
  if (cache != nullptr) *cache = std::make_unique<ForwardCache>();
  return x.at(x.rows() - 1, target_index_);
}

void TcnConfig::validate() const {
  if (filters.empty()) throw ConfigError("baselines.tcn.filters", "must be non-empty");
  if (filters.size() != dilations.size()) {
    throw ConfigError("baselines.tcn.dilations", "must have one entry per block");
  }
  for (std::size_t f : filters) {
    if (f == 0) throw ConfigError("baselines.tcn.filters", "must be >= 1");
  }
  for (std::size_t d : dilations) {
    if (d == 0) throw ConfigError("baselines.tcn.dilations", "must be >= 1");
  }
  if (kernel == 0) throw ConfigError("baselines.tcn.kernel", "must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw ConfigError("baselines.tcn.dropout", "must be in [0, 1)");
  if (input_dim == 0) throw ConfigError("model.input_dim", "must be >= 1");
}

Tcn::Tcn(const TcnConfig& config) : config_(config) {
  config_.validate();
  std::size_t in = config_.input_dim;
  for (std::size_t b = 0; b < config_.filters.size(); ++b) {
    const std::string name = "tcn.block" + std::to_string(b);
    Block block;
    block.in = in;
    block.out = config_.filters[b];
    block.dilation = config_.dilations[b];
    block.conv = Linear::create(params_, name + ".conv", config_.kernel * in, block.out);
    block.norm = LayerNorm::create(params_, name + ".norm", block.out);
    if (in != block.out) block.projection = Linear::create(params_, name + ".residual", in, block.out, false);
    blocks_.push_back(block);
    in = block.out;
  }
  head_ = Linear::create(params_, "tcn.head", in, 1);
}

void Tcn::run(const Tensor& x, Mode mode, Rng* dropout, TcnCache& c) const {
  if (x.rank() != 2 || x.cols() != config_.input_dim) throw std::invalid_argument("window width mismatch");
  Rng* rng = mode == Mode::Train ? dropout : nullptr;
  const std::size_t length = x.rows();
  const std::size_t k = config_.kernel;
  c.blocks.resize(blocks_.size());
  Tensor current = x;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& blk = blocks_[b];
    auto& bc = c.blocks[b];
    bc.input = current;
    bc.taps = Tensor::matrix(length, k * blk.in);
    for (std::size_t t = 0; t < length; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t back = (k - 1 - j) * blk.dilation;
        if (back > t) continue;
        std::copy_n(current.row(t - back), blk.in, bc.taps.row(t) + j * blk.in);
      }
    }
    bc.xhat = Tensor::matrix(length, blk.out);
    bc.norm = Tensor::matrix(length, blk.out);
    bc.inv_std.assign(length, 0.0);
    bc.output = Tensor::matrix(length, blk.out);
    bc.mask = dropout_mask(rng, config_.dropout_rate, length * blk.out);
    std::vector<double> pre(blk.out);
    for (std::size_t t = 0; t < length; ++t) {
      blk.conv.forward(params_, bc.taps.row(t), pre.data());
      bc.inv_std[t] = blk.norm.forward(params_, pre.data(), bc.xhat.row(t), bc.norm.row(t));
      double* out = bc.output.row(t);
      for (std::size_t j = 0; j < blk.out; ++j) out[j] = gelu(bc.norm.at(t, j));
      if (!bc.mask.empty()) {
        for (std::size_t j = 0; j < blk.out; ++j) out[j] *= bc.mask[t * blk.out + j];
      }
      if (blk.projection.weight != kNoParam) {
        std::vector<double> res(blk.out);
        blk.projection.forward(params_, current.row(t), res.data());
        for (std::size_t j = 0; j < blk.out; ++j) out[j] += res[j];
      } else {
        for (std::size_t j = 0; j < blk.out; ++j) out[j] += current.at(t, j);
      }
    }
    if (!bc.output.all_finite()) throw NumericError("non-finite activation in tcn block " + std::to_string(b));
    current = bc.output;
  }
  head_.forward(params_, current.row(length - 1), &c.y);
}

double Tcn::forward(const Tensor& x, Mode mode, Rng* dropout, std::unique_ptr<ForwardCache>* cache) const {
  auto c = std::make_unique<TcnCache>();
  run(x, mode, dropout, *c);
  const double y = c->y;
  if (cache != nullptr) *cache = std::move(c);
  return y;
}

TcnCache Tcn::activations(const Tensor& x) const {
  TcnCache c;
  run(x, Mode::Eval, nullptr, c);
  return c;
}

void Tcn::backward(const ForwardCache& base, double dy) {
  const auto* cp = dynamic_cast<const TcnCache*>(&base);
  if (cp == nullptr) throw std::invalid_argument("missing TCN forward cache");
  const std::size_t length = cp->blocks.front().input.rows();
  const std::size_t k = config_.kernel;
  Tensor dout = Tensor::matrix(length, blocks_.back().out);
  head_.backward(params_, cp->blocks.back().output.row(length - 1), &dy, dout.row(length - 1));
  for (std::size_t b = blocks_.size(); b-- > 0;) {
    const Block& blk = blocks_[b];
    const auto& bc = cp->blocks[b];
    Tensor din = Tensor::matrix(length, blk.in);
    Tensor dtaps = Tensor::matrix(length, k * blk.in);
    std::vector<double> dnorm(blk.out), dpre(blk.out);
    for (std::size_t t = 0; t < length; ++t) {
      const double* d = dout.row(t);
      for (std::size_t j = 0; j < blk.out; ++j) {
        const double m = bc.mask.empty() ? 1.0 : bc.mask[t * blk.out + j];
        dnorm[j] = d[j] * m * gelu_grad(bc.norm.at(t, j));
      }
      std::fill(dpre.begin(), dpre.end(), 0.0);
      blk.norm.backward(params_, bc.xhat.row(t), bc.inv_std[t], dnorm.data(), dpre.data());
      blk.conv.backward(params_, bc.taps.row(t), dpre.data(), dtaps.row(t));
      if (blk.projection.weight != kNoParam) {
        blk.projection.backward(params_, bc.input.row(t), d, din.row(t));
      } else {
        double* di = din.row(t);
        for (std::size_t j = 0; j < blk.out; ++j) di[j] += d[j];
      }
    }
    for (std::size_t t = 0; t < length; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t back = (k - 1 - j) * blk.dilation;
        if (back > t) continue;
        const double* src = dtaps.row(t) + j * blk.in;
        double* dst = din.row(t - back);
        for (std::size_t i = 0; i < blk.in; ++i) dst[i] += src[i];
      }
    }
    dout = std::move(din);
  }
}

void NBeatsConfig::validate() const {
  if (stacks == 0) throw ConfigError("baselines.nbeats.stacks", "must be >= 1");
  if (fc_layers == 0) throw ConfigError("baselines.nbeats.fc_layers", "must be >= 1");
  if (units == 0) throw ConfigError("baselines.nbeats.units", "must be >= 1");
  if (lookback == 0) throw ConfigError("dataset.lookback", "must be >= 1");
}

NBeats::NBeats(const NBeatsConfig& config) : config_(config) {
  config_.validate();
  for (std::size_t s = 0; s < config_.stacks; ++s) {
    const std::string name = "nbeats.stack" + std::to_string(s);
    Stack st;
    std::size_t in = config_.lookback;
    for (std::size_t l = 0; l < config_.fc_layers; ++l) {
      st.fc.push_back(Linear::create(params_, name + ".fc" + std::to_string(l), in, config_.units));
      in = config_.units;
    }
    st.backcast = Linear::create(params_, name + ".backcast", in, config_.lookback);
    st.forecast = Linear::create(params_, name + ".forecast", in, 1);
    stacks_.push_back(std::move(st));
  }
}

void NBeats::run(const Tensor& x, NBeatsCache& c) const {
  const std::size_t length = config_.lookback;
  if (x.rank() != 2 || x.rows() != length || config_.target_index >= x.cols()) {
    throw std::invalid_argument("window shape does not match N-BEATS lookback/target");
  }
  std::vector<double> r(length);
  for (std::size_t t = 0; t < length; ++t) r[t] = x.at(t, config_.target_index);
  c.stacks.resize(stacks_.size());
  c.y = 0.0;
  for (std::size_t s = 0; s < stacks_.size(); ++s) {
    const Stack& st = stacks_[s];
    auto& sc = c.stacks[s];
    sc.input = r;
    sc.pre.assign(st.fc.size(), {});
    sc.hidden.assign(st.fc.size(), {});
    const double* in = sc.input.data();
    for (std::size_t l = 0; l < st.fc.size(); ++l) {
      sc.pre[l].assign(st.fc[l].out, 0.0);
      st.fc[l].forward(params_, in, sc.pre[l].data());
      sc.hidden[l].resize(st.fc[l].out);
      for (std::size_t j = 0; j < st.fc[l].out; ++j) sc.hidden[l][j] = gelu(sc.pre[l][j]);
      in = sc.hidden[l].data();
    }
    sc.backcast.assign(length, 0.0);
    st.backcast.forward(params_, in, sc.backcast.data());
    st.forecast.forward(params_, in, &sc.forecast);
    for (std::size_t t = 0; t < length; ++t) r[t] -= sc.backcast[t];
    c.y += sc.forecast;
  }
  if (!std::isfinite(c.y)) throw NumericError("non-finite activation in nbeats output");
}

double NBeats::forward(const Tensor& x, Mode, Rng*, std::unique_ptr<ForwardCache>* cache) const {
  auto c = std::make_unique<NBeatsCache>();
  run(x, *c);
  const double y = c->y;
  if (cache != nullptr) *cache = std::move(c);
  return y;
}

std::vector<double> NBeats::stack_forecasts(const Tensor& x) const {
  NBeatsCache c;
  run(x, c);
  std::vector<double> out;
  for (const auto& s : c.stacks) out.push_back(s.forecast);
  return out;
}

void NBeats::backward(const ForwardCache& base, double dy) {
  const auto* cp = dynamic_cast<const NBeatsCache*>(&base);
  if (cp == nullptr) throw std::invalid_argument("missing N-BEATS forward cache");
  const std::size_t length = config_.lookback;
  // Gradient w.r.t. the residual leaving the current stack.
  std::vector<double> dr(length, 0.0);
  for (std::size_t s = stacks_.size(); s-- > 0;) {
    const Stack& st = stacks_[s];
    const auto& sc = cp->stacks[s];
    const std::size_t top = st.fc.size() - 1;
    std::vector<double> dh(st.fc[top].out, 0.0);
    std::vector<double> dback(length);
    for (std::size_t t = 0; t < length; ++t) dback[t] = -dr[t];
    st.forecast.backward(params_, sc.hidden[top].data(), &dy, dh.data());
    st.backcast.backward(params_, sc.hidden[top].data(), dback.data(), dh.data());
    std::vector<double> din_stack = dr;
    for (std::size_t l = st.fc.size(); l-- > 0;) {
      std::vector<double> dpre(st.fc[l].out);
      for (std::size_t j = 0; j < dpre.size(); ++j) dpre[j] = dh[j] * gelu_grad(sc.pre[l][j]);
      const double* in = l == 0 ? sc.input.data() : sc.hidden[l - 1].data();
      if (l == 0) {
        st.fc[l].backward(params_, in, dpre.data(), din_stack.data());
      } else {
        std::vector<double> dprev(st.fc[l].in, 0.0);
        st.fc[l].backward(params_, in, dpre.data(), dprev.data());
        dh = std::move(dprev);
      }
    }
    dr = std::move(din_stack);
  }
}

}  // namespace extremecast
