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

#include "extremecast/augment.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/errors.hpp"
#include "extremecast/spline.hpp"

namespace extremecast {

void AugmentConfig::validate() const {
  if (!(jitter_sigma >= 0.0)) throw ConfigError("augment.jitter_sigma", "must be non-negative");
  if (!(scale_lo <= scale_hi)) throw ConfigError("augment.scale_lo", "must not exceed augment.scale_hi");
  if (warp_knots < 2) throw ConfigError("augment.warp_knots", "must be at least 2");
  if (!(warp_sigma >= 0.0)) throw ConfigError("augment.warp_sigma", "must be non-negative");
}

Tensor jitter(const Tensor& x, Rng& rng, double sigma) {
  Tensor out = x;
  for (double& v : out.values()) v += rng.gaussian(0.0, sigma);
  return out;
}

Tensor scale(const Tensor& x, Rng& rng, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("scale requires lo <= hi");
  const double u = lo + (hi - lo) * rng.uniform01();
  Tensor out = x;
  for (double& v : out.values()) v *= u;
  return out;
}

namespace {

std::vector<double> anchors(std::size_t length, std::size_t knots) {
  std::vector<double> a(knots + 2);
  const double span = static_cast<double>(length - 1);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = span * static_cast<double>(k) / static_cast<double>(knots + 1);
  a.back() = span;
  return a;
}

// Value of column `col` at fractional row position `pos`.
double sample_at(const Tensor& x, double pos, std::size_t col) {
  const std::size_t last = x.rows() - 1;
  if (pos <= 0.0) return x.at(0, col);
  if (pos >= static_cast<double>(last)) return x.at(last, col);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double w = pos - static_cast<double>(lo);
  if (w == 0.0) return x.at(lo, col);
  return (1.0 - w) * x.at(lo, col) + w * x.at(lo + 1, col);
}

}  // namespace

Tensor time_warp(const Tensor& x, Rng& rng, std::size_t knots, double sigma) {
  const std::size_t length = x.rows();
  if (length < 4) throw std::invalid_argument("time_warp needs at least 4 timesteps");
  if (knots < 2) throw std::invalid_argument("time_warp needs at least 2 knots");
  const double span = static_cast<double>(length - 1);
  const auto xs = anchors(length, knots);
  const double offset_sd = sigma * static_cast<double>(length) / static_cast<double>(knots);

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<double> ys = xs;
    for (std::size_t k = 1; k + 1 < xs.size(); ++k) ys[k] += rng.gaussian(0.0, offset_sd);
    if (sigma == 0.0) return x;
    const NaturalCubicSpline warp(xs, ys);
    std::vector<double> tau(length);
    for (std::size_t i = 0; i < length; ++i) tau[i] = std::clamp(warp(static_cast<double>(i)), 0.0, span);
    std::sort(tau.begin(), tau.end());
    tau.front() = 0.0;
    tau.back() = span;
    bool strict = true;
    for (std::size_t i = 1; i < length; ++i) strict = strict && tau[i] > tau[i - 1];
    if (!strict) continue;

    // tau is piecewise linear over the integer grid; invert it at each grid point.
    Tensor out = Tensor::matrix(length, x.cols());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const double v = static_cast<double>(i);
      while (seg + 2 < length && tau[seg + 1] < v) ++seg;
      const double pos = static_cast<double>(seg) + (v - tau[seg]) / (tau[seg + 1] - tau[seg]);
      for (std::size_t c = 0; c < x.cols(); ++c) out.at(i, c) = sample_at(x, pos, c);
    }
    for (std::size_t c = 0; c < x.cols(); ++c) {
      out.at(0, c) = x.at(0, c);
      out.at(length - 1, c) = x.at(length - 1, c);
    }
    return out;
  }
  throw NumericError("time_warp could not draw a monotone warp in 10 attempts");
}

Tensor magnitude_warp(const Tensor& x, Rng& rng, std::size_t knots, double sigma) {
  const std::size_t length = x.rows();
  if (length < 4) throw std::invalid_argument("magnitude_warp needs at least 4 timesteps");
  if (knots < 2) throw std::invalid_argument("magnitude_warp needs at least 2 knots");
  const auto xs = anchors(length, knots);
  std::vector<double> ys(xs.size());
  for (double& y : ys) y = rng.gaussian(1.0, sigma);
  if (sigma == 0.0) return x;
  const NaturalCubicSpline curve(xs, ys);
  Tensor out = x;
  for (std::size_t t = 0; t < length; ++t) {
    const double m = std::clamp(curve(static_cast<double>(t)), 0.5, 1.5);
    double* row = out.row(t);
    for (std::size_t c = 0; c < x.cols(); ++c) row[c] *= m;
  }
  return out;
}

WindowedDataset augment_dataset(const WindowedDataset& train, const AugmentConfig& cfg, const Rng& rng) {
  if (train.partition != Partition::Train) throw DataError("augmentation is train-only");
  cfg.validate();
  WindowedDataset out;
  out.partition = train.partition;
  out.lookback = train.lookback;
  out.feature_names = train.feature_names;
  out.samples.reserve(train.size() * 4);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const Sample& s = train.samples[i];
    Rng local = rng.substream(i);
    out.samples.push_back(s);
    out.samples.push_back({jitter(s.x, local, cfg.jitter_sigma), s.y, s.target_date});
    out.samples.push_back({scale(s.x, local, cfg.scale_lo, cfg.scale_hi), s.y, s.target_date});
    Tensor warped = i % 2 == 0 ? time_warp(s.x, local, cfg.warp_knots, cfg.warp_sigma)
                               : magnitude_warp(s.x, local, cfg.warp_knots, cfg.warp_sigma);
    out.samples.push_back({std::move(warped), s.y, s.target_date});
  }
  return out;
}

}  // namespace extremecast
