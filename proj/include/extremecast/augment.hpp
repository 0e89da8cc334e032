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

#include "extremecast/data_pipeline.hpp"
#include "extremecast/rng.hpp"
#include "extremecast/tensor.hpp"

namespace extremecast {

struct AugmentConfig {
  bool enabled = true;
  double jitter_sigma = 0.03;  // robust-scaled units
  double scale_lo = 0.9;
  double scale_hi = 1.1;
  std::size_t warp_knots = 4;
  double warp_sigma = 0.2;

  void validate() const;
};

// X + N(0, sigma^2) per entry.
Tensor jitter(const Tensor& x, Rng& rng, double sigma);
// One factor u ~ U(lo, hi) applied to the whole window.
Tensor scale(const Tensor& x, Rng& rng, double lo, double hi);

// Random monotone time map tau: knots+2 anchors evenly spaced over the window,
// interior anchors displaced by N(0, sigma*L/knots), endpoints pinned; natural
// cubic spline through (anchor, anchor + offset), evaluated on the time grid,
// clamped to the window and sorted. Each column is resampled at tau^-1 by
// linear interpolation, so the first and last rows are unchanged. A grid
// with repeated values is redrawn, at most 10 attempts.
Tensor time_warp(const Tensor& x, Rng& rng, std::size_t knots, double sigma);

// Smooth multiplicative curve: natural cubic spline through knots+2 evenly
// spaced values ~ N(1, sigma^2), clipped to [0.5, 1.5], applied per row.
Tensor magnitude_warp(const Tensor& x, Rng& rng, std::size_t knots, double sigma);

// Original + jittered + scaled + warped copy per sample (time warp for even
// sample index, magnitude warp for odd), targets untouched: 4x the input.
// Sample i draws from rng.substream(i). Throws DataError for non-train input.
WindowedDataset augment_dataset(const WindowedDataset& train, const AugmentConfig& cfg, const Rng& rng);

}  // namespace extremecast
