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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"

#include "extremecast/activations.hpp"
#include "extremecast/errors.hpp"
#include "extremecast/grad_check.hpp"
#include "extremecast/loss.hpp"
#include "extremecast/mmwstm_adran.hpp"

using namespace extremecast;

namespace {

void randomize(ParamStore& store, std::uint64_t seed, double scale = 0.5) {
  Rng rng(seed, "params");
  for (auto& p : store.all()) {
    for (double& v : p.value.values()) v = rng.gaussian(0.0, scale);
  }
}

void zero_all(ParamStore& store) {
  for (auto& p : store.all()) p.value.fill(0.0);
}

void set_param(ParamStore& store, const std::string& name, double value) {
  const std::size_t i = store.find(name);
  REQUIRE(i < store.size());
  store[i].value.fill(value);
}

double batch_loss(const MmwstmAdran& model, const std::vector<Tensor>& xs, const std::vector<double>& ys) {
  Rng dropout(5, "dropout");
  std::vector<double> pred;
  for (const auto& x : xs) pred.push_back(model.forward(x, Mode::Train, &dropout, nullptr));
  return extreme_weather_loss(pred, ys, LossConfig{}).loss;
}

void batch_backward(MmwstmAdran& model, const std::vector<Tensor>& xs, const std::vector<double>& ys) {
  Rng dropout(5, "dropout");
  std::vector<double> pred;
  std::vector<std::unique_ptr<ForwardCache>> caches(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pred.push_back(model.forward(xs[i], Mode::Train, &dropout, &caches[i]));
  const auto loss = extreme_weather_loss(pred, ys, LossConfig{});
  for (std::size_t i = 0; i < xs.size(); ++i) model.backward(*caches[i], loss.grad[i]);
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("embedding with zero weights is 0.5 and stays in (0,1)") {
    MmwstmAdran model(fixtures::tiny_model());
    zero_all(model.params());
    auto c = model.introspect(fixtures::random_matrix(8, 6, 1));
    for (double v : c.embed.values()) CHECK(v == 0.5);
    randomize(model.params(), 2, 1.0);
    c = model.introspect(fixtures::random_matrix(8, 6, 1, 2.0));
    for (double v : c.embed.values()) CHECK((v > 0.0 && v < 1.0));
  }

  TEST_CASE("all parameters zero gives zero forecast and zero recurrent states") {
    MmwstmAdran model(fixtures::tiny_model());
    zero_all(model.params());
    const Tensor x = fixtures::random_matrix(8, 6, 3);
    CHECK(model.predict(x) == 0.0);
    const auto c = model.introspect(x);
    for (double v : c.lstm.output.values()) CHECK(v == 0.0);
    for (double v : c.gru.output.values()) CHECK(v == 0.0);
  }

  TEST_CASE("single-step window works in both directions") {
    auto cfg = fixtures::tiny_model();
    cfg.lookback = 1;
    MmwstmAdran model(cfg);
    randomize(model.params(), 4);
    const auto c = model.introspect(fixtures::random_matrix(1, 6, 4));
    CHECK(std::isfinite(c.y));
    CHECK(c.lstm.output.rows() == 1);
  }

  TEST_CASE("tied LSTM directions make reversal swap the halves") {
    auto cfg = fixtures::tiny_model();
    cfg.lstm_layers = 1;
    MmwstmAdran model(cfg);
    randomize(model.params(), 5);
    auto& s = model.params();
    for (const char* part : {"w_ih", "w_hh", "bias"}) {
      const auto f = s.find(std::string("lstm.l0.fwd.") + part);
      const auto b = s.find(std::string("lstm.l0.bwd.") + part);
      s[b].value = s[f].value;
    }
    BiLstm::Cache a, r;
    const Tensor e = fixtures::random_matrix(8, 8, 6);
    Tensor rev = e;
    for (std::size_t t = 0; t < 8; ++t) std::copy_n(e.row(7 - t), 8, rev.row(t));
    model.lstm.forward(s, e, a);
    model.lstm.forward(s, rev, r);
    const std::size_t h = cfg.lstm_hidden;
    for (std::size_t t = 0; t < 8; ++t) {
      for (std::size_t j = 0; j < h; ++j) {
        CHECK(a.output.at(t, j) == doctest::Approx(r.output.at(7 - t, h + j)).epsilon(1e-12));
        CHECK(a.output.at(t, h + j) == doctest::Approx(r.output.at(7 - t, j)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("uniform transition logits give uniform prior") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 7);
    set_param(model.params(), "transition_logits", 0.3);
    const auto c = model.introspect(fixtures::random_matrix(8, 6, 7));
    for (double v : c.prior.values()) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  TEST_CASE("identity transition passes the previous emission through") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 8);
    auto& t = model.params()[model.transition_logits].value;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) t.at(i, j) = i == j ? 40.0 : 0.0;
    }
    const auto c = model.introspect(fixtures::random_matrix(8, 6, 8));
    for (std::size_t step = 1; step < 8; ++step) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(c.prior.at(step, j) - c.emission.at(step - 1, j)) < 1e-6);
    }
  }

  TEST_CASE("regime readout is affine in its input") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 9);
    const auto& s = model.params();
    std::vector<double> in(11), out1(4), out2(4), bias(s.value(model.regime_out.bias), s.value(model.regime_out.bias) + 4);
    Rng rng(9, "in");
    for (double& v : in) v = rng.gaussian(0.0, 1.0);
    model.regime_out.forward(s, in.data(), out1.data());
    for (double& v : in) v *= 2.0;
    model.regime_out.forward(s, in.data(), out2.data());
    for (std::size_t j = 0; j < 4; ++j) CHECK(out2[j] - bias[j] == doctest::Approx(2.0 * (out1[j] - bias[j])).epsilon(1e-12));
    set_param(model.params(), "regime_out.weight", 0.0);
    model.regime_out.forward(s, in.data(), out1.data());
    for (std::size_t j = 0; j < 4; ++j) CHECK(out1[j] == bias[j]);
  }

  TEST_CASE("single-head identity attention over one step is the identity") {
    ParamStore s;
    auto attn = MultiHeadAttention::create(s, "a", 4, 1);
    for (std::size_t idx : {attn.query.weight, attn.key.weight, attn.value.weight, attn.output.weight}) {
      auto& w = s[idx].value;
      for (std::size_t i = 0; i < 4; ++i) w.at(i, i) = 1.0;
    }
    const Tensor e = fixtures::random_matrix(1, 4, 10);
    MultiHeadAttention::Cache c;
    attn.forward(s, e, c);
    for (std::size_t j = 0; j < 4; ++j) CHECK(c.z.at(0, j) == doctest::Approx(e.at(0, j)).epsilon(1e-15));
  }

  TEST_CASE("attention is permutation equivariant") {
    ParamStore s;
    auto attn = MultiHeadAttention::create(s, "a", 8, 2);
    Rng init(11, "init");
    s.initialize(init);
    const Tensor e = fixtures::random_matrix(6, 8, 11);
    const std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
    Tensor pe = Tensor::matrix(6, 8);
    for (std::size_t t = 0; t < 6; ++t) std::copy_n(e.row(perm[t]), 8, pe.row(t));
    MultiHeadAttention::Cache a, b;
    attn.forward(s, e, a);
    attn.forward(s, pe, b);
    for (std::size_t t = 0; t < 6; ++t) {
      for (std::size_t j = 0; j < 8; ++j) CHECK(b.z.at(t, j) == doctest::Approx(a.z.at(perm[t], j)).epsilon(1e-12));
    }
  }

  TEST_CASE("amplification: identity at zero gain, strictly above one otherwise") {
    auto cfg = fixtures::tiny_model();
    cfg.amp_gain = 0.0;
    MmwstmAdran flat(cfg);
    randomize(flat.params(), 12);
    const Tensor x = fixtures::random_matrix(8, 6, 12);
    auto c = flat.introspect(x);
    CHECK(c.z_amp == c.attn.z);
    cfg.amp_gain = 1.0;
    MmwstmAdran amp(cfg);
    amp.params().copy_values_from(flat.params());
    c = amp.introspect(x);
    for (std::size_t t = 0; t < 8; ++t) {
      CHECK(c.alpha[t] > 1.0);
      double n0 = 0.0, n1 = 0.0;
      for (std::size_t j = 0; j < 8; ++j) {
        n0 += c.attn.z.at(t, j) * c.attn.z.at(t, j);
        n1 += c.z_amp.at(t, j) * c.z_amp.at(t, j);
      }
      CHECK(std::sqrt(n1) == doctest::Approx(c.alpha[t] * std::sqrt(n0)).epsilon(1e-12));
    }
  }

  TEST_CASE("zero GRU weights give zero states and o_A = b_ad") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 13);
    for (auto& p : model.params().all()) {
      if (p.name.rfind("gru.", 0) == 0) p.value.fill(0.0);
    }
    set_param(model.params(), "anomaly_out.weight", 0.7);
    const auto c = model.introspect(fixtures::random_matrix(8, 6, 13));
    for (double v : c.gru.output.values()) CHECK(v == 0.0);
    const double* b = model.params().value(model.anomaly_out.bias);
    for (std::size_t j = 0; j < 4; ++j) CHECK(c.o_a[j] == b[j]);
  }

  TEST_CASE("GRU on a constant input settles monotonically") {
    std::size_t monotone = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ParamStore s;
      auto gru = GruDirection::create(s, "g", 3, 4, false);
      Rng init(seed, "init");
      s.initialize(init);
      Tensor x = Tensor::matrix(40, 3);
      Rng r(seed, "x");
      std::vector<double> row{r.gaussian(0, 1), r.gaussian(0, 1), r.gaussian(0, 1)};
      for (std::size_t t = 0; t < 40; ++t) std::copy(row.begin(), row.end(), x.row(t));
      GruDirection::Cache c;
      gru.forward(s, x, c);
      bool ok = true;
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t t = 6; t < 40; ++t) {
        double d = 0.0;
        for (std::size_t j = 0; j < 4; ++j) d += std::pow(c.h.at(t, j) - c.h.at(t - 1, j), 2);
        d = std::sqrt(d);
        if (d > prev + 1e-12) ok = false;
        prev = d;
      }
      if (ok) ++monotone;
    }
    CHECK(monotone == 100);
  }

  TEST_CASE("fusion gate: midpoint, betweenness and saturation") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 14);
    const Tensor x = fixtures::random_matrix(8, 6, 14);
    set_param(model.params(), "fuse.weight", 0.0);
    set_param(model.params(), "fuse.bias", 0.0);
    auto c = model.introspect(x);
    for (std::size_t j = 0; j < 4; ++j) CHECK(c.fused[j] == doctest::Approx(0.5 * (c.o_m[j] + c.o_a[j])).epsilon(1e-14));
    set_param(model.params(), "fuse.bias", 50.0);
    c = model.introspect(x);
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(c.fused[j] - c.o_a[j]) <= 1e-12 * std::max(1.0, std::abs(c.o_a[j])));
    randomize(model.params(), 15, 2.0);
    c = model.introspect(x);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(c.fused[j] >= std::min(c.o_m[j], c.o_a[j]));
      CHECK(c.fused[j] <= std::max(c.o_m[j], c.o_a[j]));
    }
  }

  TEST_CASE("eval forward is bitwise deterministic; train differs with dropout") {
    MmwstmAdran model(fixtures::tiny_model());
    Rng init(16, "init");
    model.params().initialize(init);
    const Tensor x = fixtures::random_matrix(8, 6, 16);
    const double a = model.predict(x);
    const double b = model.predict(x);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    Rng d(1, "dropout");
    CHECK(model.forward(x, Mode::Train, &d, nullptr) != a);
  }

  TEST_CASE("non-finite input and wrong width are rejected") {
    MmwstmAdran model(fixtures::tiny_model());
    Tensor x = fixtures::random_matrix(8, 6, 17);
    x.at(3, 2) = std::nan("");
    CHECK_THROWS_AS(model.predict(x), NumericError);
    CHECK_THROWS_AS(model.predict(fixtures::random_matrix(8, 5, 17)), std::invalid_argument);
  }

  TEST_CASE("huge weights surface a numeric error naming the stage") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 18);
    set_param(model.params(), "head.bias", std::numeric_limits<double>::infinity());
    try {
      const Tensor x = fixtures::random_matrix(8, 6, 18, 1.0);
      model.predict(x);
      FAIL("expected NumericError");
    } catch (const NumericError& e) {
      CHECK(std::string(e.what()).find("output head") != std::string::npos);
    }
  }

  TEST_CASE("config validation") {
    auto cfg = fixtures::tiny_model();
    cfg.n_heads = 3;
    CHECK_THROWS_AS(MmwstmAdran{cfg}, ConfigError);
    cfg = fixtures::tiny_model();
    cfg.n_states = 1;
    CHECK_THROWS_AS(MmwstmAdran{cfg}, ConfigError);
  }

  TEST_CASE("backward: zero upstream gradient and unused amplifier path") {
    auto cfg = fixtures::tiny_model();
    cfg.amp_gain = 0.0;
    MmwstmAdran model(cfg);
    randomize(model.params(), 19);
    std::unique_ptr<ForwardCache> cache;
    Rng d(1, "dropout");
    model.forward(fixtures::random_matrix(8, 6, 19), Mode::Train, &d, &cache);
    model.params().zero_grad();
    model.backward(*cache, 0.0);
    for (const auto& p : model.params().all()) {
      for (double g : p.grad.values()) CHECK(g == 0.0);
    }
    model.backward(*cache, 1.0);
    for (const auto& p : model.params().all()) {
      if (p.name.rfind("amp_", 0) == 0) {
        for (double g : p.grad.values()) CHECK(g == 0.0);
      }
    }
    CHECK_THROWS(model.backward(ForwardCache{}, 1.0));
  }

  TEST_CASE("full-loss gradient check on the tiny config") {
    MmwstmAdran model(fixtures::tiny_model());
    randomize(model.params(), 20);
    std::vector<Tensor> xs;
    std::vector<double> ys;
    for (std::uint64_t i = 0; i < 4; ++i) {
      xs.push_back(fixtures::random_matrix(8, 6, 100 + i));
      ys.push_back(0.5 * static_cast<double>(i) - 0.7);
    }
    const auto report = grad_check(
        model.params(), [&] { return batch_loss(model, xs, ys); }, [&] { batch_backward(model, xs, ys); });
    INFO("worst " << report.worst_param << "[" << report.worst_index << "] analytic " << report.worst_analytic
                  << " numeric " << report.worst_numeric);
    CHECK(report.checked == model.params().scalar_count());
    CHECK(report.max_rel_error <= 1e-4);
  }

  TEST_CASE("simplex invariants on random parameters") {
    MmwstmAdran model(fixtures::tiny_model());
    for (std::uint64_t k = 0; k < 50; ++k) {
      randomize(model.params(), 200 + k, 1.5);
      const auto c = model.introspect(fixtures::random_matrix(8, 6, 300 + k, 2.0));
      auto check_rows = [](const Tensor& t) {
        for (std::size_t r = 0; r < t.rows(); ++r) {
          double s = 0.0;
          for (std::size_t j = 0; j < t.cols(); ++j) {
            CHECK(t.at(r, j) >= 0.0);
            s += t.at(r, j);
          }
          CHECK(std::abs(s - 1.0) <= 1e-10);
        }
      };
      check_rows(c.emission);
      check_rows(c.prior);
      check_rows(c.transition);
      for (const auto& a : c.attn.attention) check_rows(a);
    }
  }
}
