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

#include "extremecast/mmwstm_adran.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/activations.hpp"
#include "extremecast/errors.hpp"

namespace extremecast {

namespace {

void require_positive(std::size_t v, const char* field) {
  if (v == 0) throw ConfigError(std::string("model.") + field, "must be >= 1");
}

void check_finite(const Tensor& t, const char* stage) {
  if (!t.all_finite()) throw NumericError(std::string("non-finite activation in ") + stage);
}

void check_finite(const std::vector<double>& v, const char* stage) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericError(std::string("non-finite activation in ") + stage);
  }
}

std::vector<double> concat(const double* a, std::size_t na, const double* b, std::size_t nb) {
  std::vector<double> out(a, a + na);
  out.insert(out.end(), b, b + nb);
  return out;
}

}  // namespace

void ModelConfig::validate() const {
  require_positive(input_dim, "input_dim");
  require_positive(embed_dim, "embed_dim");
  require_positive(lstm_hidden, "lstm_hidden");
  require_positive(lstm_layers, "lstm_layers");
  require_positive(gru_hidden, "gru_hidden");
  require_positive(gru_layers, "gru_layers");
  require_positive(n_heads, "n_heads");
  require_positive(stream_dim, "stream_dim");
  require_positive(lookback, "lookback");
  if (n_states < 2) throw ConfigError("model.n_states", "must be >= 2");
  if (embed_dim % n_heads != 0) throw ConfigError("model.n_heads", "must divide model.embed_dim");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw ConfigError("model.dropout_rate", "must be in [0, 1)");
  if (!(amp_gain >= 0.0) || !std::isfinite(amp_gain)) throw ConfigError("model.amp_gain", "must be >= 0");
}

MmwstmAdran::MmwstmAdran(const ModelConfig& config) : config_(config) {
  config_.validate();
  const auto& c = config_;
  ParamStore& s = params_;
  embedding = Linear::create(s, "embed", c.input_dim, c.embed_dim);
  lstm = BiLstm::create(s, "lstm", c.embed_dim, c.lstm_hidden, c.lstm_layers);
  emission = Linear::create(s, "emission", 2 * c.lstm_hidden, c.n_states);
  transition_logits = s.add("transition_logits", {c.n_states, c.n_states}, false, Init::Zeros);
  regime_out = Linear::create(s, "regime_out", 2 * c.lstm_hidden + c.n_states, c.stream_dim);
  attention = MultiHeadAttention::create(s, "attention", c.embed_dim, c.n_heads);
  const std::size_t amp_width = std::max<std::size_t>(1, c.embed_dim / 2);
  amp_hidden = Linear::create(s, "amp_hidden", c.embed_dim, amp_width);
  amp_out = Linear::create(s, "amp_out", amp_width, 1);
  gru = BiGru::create(s, "gru", c.embed_dim, c.gru_hidden, c.gru_layers);
  anomaly_out = Linear::create(s, "anomaly_out", 2 * c.gru_hidden, c.stream_dim);
  fuse = Linear::create(s, "fuse", 2 * c.stream_dim, c.stream_dim);
  head = Linear::create(s, "head", c.stream_dim, 1);
}

void MmwstmAdran::run(const Tensor& x, Mode mode, Rng* dropout, MmwstmCache& c) const {
  const auto& cfg = config_;
  const ParamStore& s = params_;
  if (x.rank() != 2 || x.cols() != cfg.input_dim) {
    throw std::invalid_argument("window shape " + shape_string(x.shape()) + " does not match input_dim " +
                                std::to_string(cfg.input_dim));
  }
  if (!x.all_finite()) throw NumericError("non-finite input window");
  Rng* rng = mode == Mode::Train ? dropout : nullptr;
  const std::size_t length = x.rows();
  const std::size_t d = cfg.embed_dim;
  const std::size_t n = cfg.n_states;
  c.x = x;

  // Regime stream.
  c.embed = Tensor::matrix(length, d);
  for (std::size_t t = 0; t < length; ++t) {
    embedding.forward(s, x.row(t), c.embed.row(t));
    sigmoid_inplace({c.embed.row(t), d});
  }
  c.e = c.embed;
  c.embed_mask = dropout_mask(rng, cfg.dropout_rate, length * d);
  apply_mask(c.embed_mask, c.e.data(), length * d);
  check_finite(c.e, "embedding");

  lstm.forward(s, c.e, c.lstm);
  const Tensor& h = c.lstm.output;
  check_finite(h, "bilstm");

  c.emission = Tensor::matrix(length, n);
  for (std::size_t t = 0; t < length; ++t) {
    emission.forward(s, h.row(t), c.emission.row(t));
    softmax_inplace({c.emission.row(t), n});
  }
  c.transition = Tensor::matrix(n, n);
  std::copy_n(s.value(transition_logits), n * n, c.transition.data());
  for (std::size_t i = 0; i < n; ++i) softmax_inplace({c.transition.row(i), n});
  c.prior = Tensor::matrix(length, n);
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  for (std::size_t t = 0; t < length; ++t) {
    const double* p_prev = t == 0 ? uniform.data() : c.emission.row(t - 1);
    double* q = c.prior.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) q[j] += c.transition.at(i, j) * p_prev[i];
    }
  }
  check_finite(c.prior, "latent states");
  c.regime_in = concat(h.row(length - 1), h.cols(), c.prior.row(length - 1), n);
  c.o_m.assign(cfg.stream_dim, 0.0);
  regime_out.forward(s, c.regime_in.data(), c.o_m.data());

  // Anomaly stream.
  attention.forward(s, c.e, c.attn);
  check_finite(c.attn.z, "attention");
  const std::size_t aw = amp_hidden.out;
  c.amp_hidden = Tensor::matrix(length, aw);
  c.amp_mask = dropout_mask(rng, cfg.dropout_rate, length * aw);
  c.score.assign(length, 0.0);
  c.alpha.assign(length, 1.0);
  c.z_amp = c.attn.z;
  std::vector<double> u(aw);
  for (std::size_t t = 0; t < length; ++t) {
    double* hid = c.amp_hidden.row(t);
    amp_hidden.forward(s, c.attn.z.row(t), hid);
    tanh_inplace({hid, aw});
    std::copy_n(hid, aw, u.data());
    if (!c.amp_mask.empty()) apply_mask({c.amp_mask.begin() + t * aw, c.amp_mask.begin() + (t + 1) * aw}, u.data(), aw);
    double pre = 0.0;
    amp_out.forward(s, u.data(), &pre);
    c.score[t] = sigmoid(pre);
    c.alpha[t] = 1.0 + cfg.amp_gain * c.score[t];
    double* zr = c.z_amp.row(t);
    for (std::size_t j = 0; j < d; ++j) zr[j] *= c.alpha[t];
  }
  check_finite(c.z_amp, "anomaly amplification");

  gru.forward(s, c.z_amp, c.gru);
  check_finite(c.gru.output, "bigru");
  const std::size_t hg = cfg.gru_hidden;
  c.anomaly_in = concat(c.gru.output.row(length - 1), hg, c.gru.output.row(0) + hg, hg);
  c.o_a.assign(cfg.stream_dim, 0.0);
  anomaly_out.forward(s, c.anomaly_in.data(), c.o_a.data());

  // Fusion.
  c.fuse_in = concat(c.o_m.data(), c.o_m.size(), c.o_a.data(), c.o_a.size());
  c.gamma.assign(cfg.stream_dim, 0.0);
  fuse.forward(s, c.fuse_in.data(), c.gamma.data());
  sigmoid_inplace(c.gamma);
  c.fused.assign(cfg.stream_dim, 0.0);
  for (std::size_t j = 0; j < cfg.stream_dim; ++j) {
    const double mixed = c.gamma[j] * c.o_a[j] + (1.0 - c.gamma[j]) * c.o_m[j];
    c.fused[j] = std::clamp(mixed, std::min(c.o_m[j], c.o_a[j]), std::max(c.o_m[j], c.o_a[j]));
  }
  check_finite(c.fused, "fusion");
  head.forward(s, c.fused.data(), &c.y);
  if (!std::isfinite(c.y)) throw NumericError("non-finite activation in output head");
}

double MmwstmAdran::forward(const Tensor& x, Mode mode, Rng* dropout,
                            std::unique_ptr<ForwardCache>* cache) const {
  auto c = std::make_unique<MmwstmCache>();
  run(x, mode, dropout, *c);
  const double y = c->y;
  if (cache != nullptr) *cache = std::move(c);
  return y;
}

MmwstmCache MmwstmAdran::introspect(const Tensor& x) const {
  MmwstmCache c;
  run(x, Mode::Eval, nullptr, c);
  return c;
}

void MmwstmAdran::backward(const ForwardCache& base, double dy) {
  const auto* cp = dynamic_cast<const MmwstmCache*>(&base);
  if (cp == nullptr) throw std::invalid_argument("missing MMWSTM-ADRAN+ forward cache");
  const MmwstmCache& c = *cp;
  const auto& cfg = config_;
  ParamStore& s = params_;
  const std::size_t length = c.x.rows();
  const std::size_t d = cfg.embed_dim;
  const std::size_t n = cfg.n_states;
  const std::size_t ds = cfg.stream_dim;

  // Head and fusion.
  std::vector<double> dfused(ds, 0.0);
  head.backward(s, c.fused.data(), &dy, dfused.data());
  std::vector<double> dgate(ds), dfuse_in(2 * ds, 0.0);
  for (std::size_t j = 0; j < ds; ++j) {
    const double g = c.gamma[j];
    dgate[j] = dfused[j] * (c.o_a[j] - c.o_m[j]) * g * (1.0 - g);
    dfuse_in[j] = dfused[j] * (1.0 - g);
    dfuse_in[ds + j] = dfused[j] * g;
  }
  fuse.backward(s, c.fuse_in.data(), dgate.data(), dfuse_in.data());
  const double* do_m = dfuse_in.data();
  const double* do_a = dfuse_in.data() + ds;

  // Anomaly stream.
  const std::size_t hg = cfg.gru_hidden;
  std::vector<double> danomaly_in(2 * hg, 0.0);
  anomaly_out.backward(s, c.anomaly_in.data(), do_a, danomaly_in.data());
  Tensor dg = Tensor::matrix(length, 2 * hg);
  for (std::size_t j = 0; j < hg; ++j) {
    dg.at(length - 1, j) += danomaly_in[j];
    dg.at(0, hg + j) += danomaly_in[hg + j];
  }
  Tensor dz_amp = Tensor::matrix(length, d);
  gru.backward(s, c.gru, dg, dz_amp);

  const std::size_t aw = amp_hidden.out;
  Tensor dz = Tensor::matrix(length, d);
  std::vector<double> u(aw), du(aw), dpre(aw);
  for (std::size_t t = 0; t < length; ++t) {
    const double* z = c.attn.z.row(t);
    const double* dza = dz_amp.row(t);
    double* dzt = dz.row(t);
    double dalpha = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dzt[j] += c.alpha[t] * dza[j];
      dalpha += dza[j] * z[j];
    }
    const double sc = c.score[t];
    double dscore_pre = dalpha * cfg.amp_gain * sc * (1.0 - sc);
    const double* hid = c.amp_hidden.row(t);
    std::copy_n(hid, aw, u.data());
    const double* mask = c.amp_mask.empty() ? nullptr : c.amp_mask.data() + t * aw;
    if (mask != nullptr) {
      for (std::size_t j = 0; j < aw; ++j) u[j] *= mask[j];
    }
    std::fill(du.begin(), du.end(), 0.0);
    amp_out.backward(s, u.data(), &dscore_pre, du.data());
    for (std::size_t j = 0; j < aw; ++j) {
      const double m = mask != nullptr ? mask[j] : 1.0;
      dpre[j] = du[j] * m * (1.0 - hid[j] * hid[j]);
    }
    amp_hidden.backward(s, z, dpre.data(), dzt);
  }
  Tensor de = Tensor::matrix(length, d);
  attention.backward(s, c.e, c.attn, dz, de);

  // Regime stream.
  const std::size_t hl2 = 2 * cfg.lstm_hidden;
  std::vector<double> dregime_in(hl2 + n, 0.0);
  regime_out.backward(s, c.regime_in.data(), do_m, dregime_in.data());
  Tensor dh = Tensor::matrix(length, hl2);
  std::copy_n(dregime_in.data(), hl2, dh.row(length - 1));
  const double* dq = dregime_in.data() + hl2;
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  const double* p_prev = length > 1 ? c.emission.row(length - 2) : uniform.data();
  std::vector<double> dp(n, 0.0), dt_row(n), dlogit(n);
  double* dlogits = s.grad(transition_logits);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dt_row[j] = p_prev[i] * dq[j];
      dp[i] += c.transition.at(i, j) * dq[j];
    }
    softmax_backward({c.transition.row(i), n}, dt_row, {dlogits + i * n, n});
  }
  if (length > 1) {
    std::fill(dlogit.begin(), dlogit.end(), 0.0);
    softmax_backward({c.emission.row(length - 2), n}, dp, dlogit);
    emission.backward(s, c.lstm.output.row(length - 2), dlogit.data(), dh.row(length - 2));
  }
  lstm.backward(s, c.lstm, dh, de);

  // Shared embedding.
  apply_mask(c.embed_mask, de.data(), length * d);
  std::vector<double> dpre_e(d);
  for (std::size_t t = 0; t < length; ++t) {
    const double* e = c.embed.row(t);
    const double* det = de.row(t);
    for (std::size_t j = 0; j < d; ++j) dpre_e[j] = det[j] * e[j] * (1.0 - e[j]);
    embedding.backward(s, c.x.row(t), dpre_e.data(), nullptr);
  }
}

}  // namespace extremecast
