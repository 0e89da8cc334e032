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
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "extremecast/activations.hpp"
#include "extremecast/errors.hpp"
#include "extremecast/grad_check.hpp"
#include "extremecast/params.hpp"
#include "extremecast/quantile.hpp"
#include "extremecast/rng.hpp"
#include "extremecast/tensor.hpp"

using namespace extremecast;

TEST_SUITE("numeric") {
  TEST_CASE("tensor shape invariants") {
    Tensor t({2, 3}, 1.5);
    CHECK(t.size() == 6);
    CHECK(t.rows() == 2);
    CHECK(t.cols() == 3);
    t.at(1, 2) = 4.0;
    CHECK(t[5] == 4.0);
    CHECK(t.all_finite());
    t[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(t.all_finite());
    CHECK_THROWS(Tensor({2, 2}, std::vector<double>{1, 2, 3}));
  }

  TEST_CASE("sigmoid examples") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(std::abs(sigmoid(50.0) - 1.0) <= 1e-15);
    CHECK(std::abs(sigmoid(1.0) - 0.7310585786300049) <= 1e-15);
    CHECK(std::isfinite(sigmoid(-1000.0)));
    CHECK(std::isfinite(sigmoid(1000.0)));
    Rng rng(3, "sigmoid");
    for (int i = 0; i < 1000; ++i) {
      double a = rng.uniform(-30, 30), b = rng.uniform(-30, 30);
      if (a > b) std::swap(a, b);
      if (a < b) CHECK(sigmoid(a) <= sigmoid(b));
      if (b - a > 1e-6 && std::abs(a) < 20 && std::abs(b) < 20) CHECK(sigmoid(a) < sigmoid(b));
    }
  }

  TEST_CASE("softmax examples and simplex") {
    const std::vector<double> zero{0, 0, 0};
    for (double p : softmax(zero)) CHECK(std::abs(p - 1.0 / 3.0) <= 1e-15);
    const std::vector<double> x{1, 2, 3};
    const auto p = softmax(x);
    CHECK(std::abs(p[0] - 0.09003057317038046) <= 1e-12);
    CHECK(std::abs(p[1] - 0.24472847105479764) <= 1e-12);
    CHECK(std::abs(p[2] - 0.6652409557748219) <= 1e-12);
    const std::vector<double> shifted{1000.0, 1003.0}, base{0.0, 3.0};
    const auto ps = softmax(shifted), pb = softmax(base);
    CHECK(std::abs(ps[0] - pb[0]) <= 1e-15);
    CHECK_THROWS_WITH_AS(softmax(std::vector<double>{}), "empty softmax", std::invalid_argument);
    Rng rng(4, "softmax");
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> v(1 + rng.below(12));
      for (auto& e : v) e = rng.uniform(-50, 50);
      const auto s = softmax(v);
      double sum = 0.0;
      for (double e : s) {
        CHECK(e >= 0.0);
        sum += e;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("gelu derivative matches central difference") {
    for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
      const double h = 1e-6;
      CHECK(std::abs(gelu_grad(x) - (gelu(x + h) - gelu(x - h)) / (2 * h)) <= 1e-8);
    }
    CHECK(gelu(0.0) == 0.0);
  }

  TEST_CASE("rng golden values") {
    Rng a(42, "init");
    CHECK(a.next() == 3119888025082367609ull);
    CHECK(a.next() == 15701146790222189748ull);
    CHECK(a.next() == 10409750383466758954ull);
    CHECK(Rng(42, "init").uniform01() == 0.16912946873529056);
    CHECK(Rng(7, "shuffle#3").uniform01() == 0.9816130078848289);
    CHECK(Rng(1, "g").gaussian(0.0, 1.0) == -0.3862235634943366);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  }

  TEST_CASE("rng determinism and streams") {
    Rng a(9, "augment"), b(9, "augment"), c(9, "dropout");
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
      const auto x = a.next();
      CHECK(x == b.next());
      differs |= x != c.next();
    }
    CHECK(differs);
    const double first = Rng(5, "augment").uniform(0.0, 1.0);
    CHECK(first == Rng(5, "augment").uniform01());
    CHECK(first >= 0.0);
    CHECK(first < 1.0);
  }

  TEST_CASE("rng distributions and errors") {
    Rng rng(11, "dist");
    CHECK(rng.gaussian(2.5, 0.0) == 2.5);
    CHECK_THROWS_AS(rng.gaussian(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(rng.uniform(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
    double sum = 0, sq = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double g = rng.gaussian(0.0, 1.0);
      sum += g;
      sq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
    for (int i = 0; i < 1000; ++i) CHECK(rng.below(7) < 7);
    CHECK(rng.substream(3).next() == rng.substream(3).next());
    CHECK(rng.substream(3).next() != rng.substream(4).next());
  }

  TEST_CASE("quantile type 7") {
    const std::vector<double> x{5, 1, 4, 2, 3};
    CHECK(quantile(x, 0.25) == 2.0);
    CHECK(quantile(x, 0.5) == 3.0);
    CHECK(quantile(x, 0.75) == 4.0);
    CHECK(median(x) == 3.0);
    std::vector<double> t(20);
    std::iota(t.begin(), t.end(), 1.0);
    CHECK(std::abs(quantile(t, 0.95) - 19.05) <= 1e-12);
    CHECK(std::abs(quantile(t, 0.05) - 1.95) <= 1e-12);
    CHECK(quantile(t, 0.0) == 1.0);
    CHECK(quantile(t, 1.0) == 20.0);
    CHECK(sample_std(std::vector<double>{3.0}) == 0.0);
    CHECK(std::abs(sample_std(std::vector<double>{0, 2, 0, 2, 0, 2, 0}) - 1.0690449676496976) <= 1e-12);
  }

  TEST_CASE("grad_check trivial cases") {
    ParamStore store;
    const auto w = store.add_weight("w", {1});
    store.value(w)[0] = 3.0;
    const auto report = grad_check(
        store, [&] { return store.value(w)[0] * store.value(w)[0]; },
        [&] { store.grad(w)[0] = 2.0 * store.value(w)[0]; });
    CHECK(report.checked == 1);
    CHECK(std::abs(report.worst_analytic - 6.0) <= 1e-9);
    CHECK(std::abs(report.worst_numeric - 6.0) <= 1e-9);
    CHECK(report.max_rel_error <= 1e-9);

    ParamStore empty;
    const auto none = grad_check(empty, [] { return 1.0; }, [] {});
    CHECK(none.checked == 0);
    CHECK(none.max_rel_error == 0.0);
  }

  TEST_CASE("grad_check flags a wrong gradient and non-finite loss") {
    ParamStore store;
    const auto w = store.add_weight("w", {2});
    store.value(w)[0] = 1.0;
    store.value(w)[1] = 2.0;
    const auto bad = grad_check(
        store, [&] { return store.value(w)[0] * store.value(w)[1]; },
        [&] {
          store.grad(w)[0] = store.value(w)[1];
          store.grad(w)[1] = 0.0;
        });
    CHECK(bad.max_rel_error > 0.5);
    CHECK(bad.worst_param == "w");
    CHECK(bad.worst_index == 1);
    CHECK_THROWS_WITH_AS(grad_check(
                             store, [&] { return store.value(w)[0] > 1.0 ? std::nan("") : 0.0; }, [] {}),
                         doctest::Contains("w"), NumericError);
  }
}
