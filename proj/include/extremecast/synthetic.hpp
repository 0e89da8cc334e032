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
#include <string>

#include "extremecast/table.hpp"

namespace extremecast {

struct SyntheticConfig {
  std::size_t days = 2000;
  std::string start = "2019-01-01";
  double base = 30.0;
  double amplitude = 15.0;
  double phase_day = 105.0;
  double ar_phi = 0.7;
  double ar_sigma = 1.5;  // innovation standard deviation
  std::size_t spikes = 20;
  double spike_size = 8.0;
};

// Daily tempmax = base + amplitude sin(2 pi (doy - phase_day) / 365.25) + AR(1)
// noise, with single-day +/- spike_size spikes on distinct days. tempmin,
// temp, humidity, precip, sealevelpressure and windspeed are noisy
// same-day functions of tempmax. Draws from Rng(seed, "synthetic").
TimeSeriesTable synthetic_weather(const SyntheticConfig& cfg, std::uint64_t seed);

// tempmax follows a Gaussian random walk with unit steps; the other columns
// are independent noise.
TimeSeriesTable synthetic_random_walk(std::size_t days, std::uint64_t seed);

void write_csv(const TimeSeriesTable& table, const std::string& path);

}  // namespace extremecast
