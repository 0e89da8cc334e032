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

#include <cmath>

#include "doctest.h"
#include "extremecast/baselines.hpp"
#include "extremecast/errors.hpp"
#include "extremecast/prepare.hpp"
#include "extremecast/synthetic.hpp"
#include "extremecast/trainer.hpp"
#include "fixtures.hpp"

using namespace extremecast;

namespace {

TcnConfig tiny_tcn() {
  TcnConfig c;
  c.input_dim = 6;
  c.filters = {4, 6, 6};
  c.dilations = {1, 2, 4};
  c.kernel = 3;
  c.dropout_rate = 0.2;
  return c;
}

NBeatsConfig tiny_nbeats(std::size_t stacks = 3) {
  NBeatsConfig c;
  c.stacks = stacks;
  c.fc_layers = 2;
  c.units = 5;
  c.lookback = 8;
  c.target_index = 2;
  return c;
}

void randomize(ParamStore& store, std::uint64_t seed, double scale = 0.5) {
  Rng rng(seed, "params");
  for (auto& p : store.all()) {
    for (double& v : p.value.values()) v = rng.gaussian(0.0, scale);
  }
}

void batch(std::vector<Tensor>& xs, std::vector<double>& ys) {
  for (std::uint64_t i = 0; i < 4; ++i) {
    xs.push_back(fixtures::random_matrix(8, 6, 100 + i));
    ys.push_back(0.5 * static_cast<double>(i) - 0.7);
  }
}

}  // namespace

TEST_SUITE("baselines") {
  TEST_CASE("persistence") {
    const Persistence p(1);
    Tensor x = Tensor::matrix(5, 3, 0.2);
    x.at(4, 1) = 0.7;
    CHECK(p.predict(x) == 0.7);
    CHECK_FALSE(p.trainable());
    CHECK_THROWS_WITH_AS(Persistence(3).predict(x), "tempmax feature absent from window", DataError);

    WindowedDataset flat;
    flat.feature_names = {"tempmax"};
    for (int i = 0; i < 10; ++i) flat.samples.push_back({Tensor::matrix(4, 1, 2.5), 2.5, {}});
    CHECK(evaluate_raw(Persistence(0), flat, ColumnScale{}).rmse == 0.0);
  }

  TEST_CASE("persistence on a random walk matches the step noise") {
    const auto table = synthetic_random_walk(4000, 9);
    DatasetConfig dc;
    dc.lookback = 5;
    FeatureSpec fs;
    fs.mode = FeatureMode::RawOnly;
    const auto data = prepare_dataset(table, dc, fs);
    const auto m = evaluate_raw(Persistence(data.target_index), data.windows.test, data.target_scale());
    CHECK(m.rmse == doctest::Approx(1.0).epsilon(0.08));
  }

  TEST_CASE("tcn zero weights give the head bias") {
    Tcn tcn(tiny_tcn());
    for (auto& p : tcn.params().all()) p.value.fill(0.0);
    tcn.params()[tcn.params().find("tcn.head.bias")].value.fill(0.37);
    CHECK(tcn.predict(fixtures::random_matrix(8, 6, 1)) == 0.37);
  }

  TEST_CASE("tcn is causal") {
    Tcn tcn(tiny_tcn());
    randomize(tcn.params(), 3);
    const Tensor x = fixtures::random_matrix(8, 6, 4);
    const auto base = tcn.activations(x);
    for (std::size_t t = 0; t < 8; ++t) {
      Tensor y = x;
      for (std::size_t f = 0; f < 6; ++f) y.at(t, f) += 1.0;
      const auto pert = tcn.activations(y);
      for (std::size_t b = 0; b < base.blocks.size(); ++b) {
        const Tensor& o0 = base.blocks[b].output;
        const Tensor& o1 = pert.blocks[b].output;
        for (std::size_t s = 0; s < 8; ++s) {
          bool same = true;
          for (std::size_t c = 0; c < o0.cols(); ++c) same = same && o0.at(s, c) == o1.at(s, c);
          if (s < t) CHECK(same);
          if (s == t) CHECK_FALSE(same);
        }
      }
    }
  }

  TEST_CASE("tcn gradient check") {
    Tcn tcn(tiny_tcn());
    randomize(tcn.params(), 5);
    std::vector<Tensor> xs;
    std::vector<double> ys;
    batch(xs, ys);
    for (LossKind kind : {LossKind::Huber, LossKind::Extreme}) {
      const auto r = fixtures::model_grad_check(tcn, xs, ys, kind);
      INFO(r.worst_param << "[" << r.worst_index << "]");
      CHECK(r.checked == tcn.params().scalar_count());
      CHECK(r.max_rel_error <= 1e-4);
    }
  }

  TEST_CASE("nbeats zero stack gives the forecast bias") {
    NBeats nb(tiny_nbeats(1));
    for (auto& p : nb.params().all()) p.value.fill(0.0);
    nb.params()[nb.params().find("nbeats.stack0.forecast.bias")].value.fill(-0.25);
    CHECK(nb.predict(fixtures::random_matrix(8, 6, 2)) == -0.25);
  }

  TEST_CASE("nbeats backcast bias propagates to the next stack") {
    NBeats nb(tiny_nbeats(2));
    randomize(nb.params(), 6);
    const Tensor x = fixtures::random_matrix(8, 6, 7);
    auto& s0 = nb.params();
    for (auto& p : s0.all()) {
      if (p.name.rfind("nbeats.stack0.", 0) == 0) p.value.fill(0.0);
    }
    const double before = nb.predict(x);
    s0[s0.find("nbeats.stack0.backcast.bias")].value.fill(0.3);
    Tensor shifted = x;
    for (std::size_t t = 0; t < 8; ++t) shifted.at(t, 2) -= 0.3;
    s0[s0.find("nbeats.stack0.backcast.bias")].value.fill(0.0);
    const double expect = nb.predict(shifted);
    s0[s0.find("nbeats.stack0.backcast.bias")].value.fill(0.3);
    CHECK(nb.predict(x) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(before != expect);
  }

  TEST_CASE("nbeats extra zero stacks leave the output unchanged") {
    NBeats small(tiny_nbeats(2));
    randomize(small.params(), 8);
    NBeats big(tiny_nbeats(4));
    for (auto& p : big.params().all()) {
      const auto i = small.params().find(p.name);
      if (i < small.params().size()) p.value = small.params()[i].value;
      else p.value.fill(0.0);
    }
    for (std::uint64_t k = 0; k < 10; ++k) {
      const Tensor x = fixtures::random_matrix(8, 6, 20 + k);
      CHECK(big.predict(x) == small.predict(x));
    }
  }

  TEST_CASE("nbeats decomposition and gradient check") {
    NBeats nb(tiny_nbeats(3));
    randomize(nb.params(), 9);
    for (std::uint64_t k = 0; k < 20; ++k) {
      const Tensor x = fixtures::random_matrix(8, 6, 40 + k);
      double sum = 0.0;
      for (double f : nb.stack_forecasts(x)) sum += f;
      CHECK(sum == nb.predict(x));
    }
    std::vector<Tensor> xs;
    std::vector<double> ys;
    batch(xs, ys);
    const auto r = fixtures::model_grad_check(nb, xs, ys, LossKind::Huber);
    INFO(r.worst_param << "[" << r.worst_index << "]");
    CHECK(r.checked == nb.params().scalar_count());
    CHECK(r.max_rel_error <= 1e-4);
  }

  TEST_CASE("baseline config validation") {
    TcnConfig t = tiny_tcn();
    t.dilations = {1, 2};
    CHECK_THROWS_AS(t.validate(), ConfigError);
    NBeatsConfig n = tiny_nbeats();
    n.stacks = 0;
    CHECK_THROWS_AS(n.validate(), ConfigError);
  }
}
