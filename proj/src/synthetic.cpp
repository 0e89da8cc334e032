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

#include "extremecast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "extremecast/errors.hpp"
#include "extremecast/rng.hpp"

namespace extremecast {

namespace {

TimeSeriesTable empty_table(std::size_t days, const std::string& start) {
  TimeSeriesTable t;
  const Date first = parse_iso_date(start);
  for (std::size_t i = 0; i < days; ++i) t.dates.push_back(first + std::chrono::days(static_cast<int>(i)));
  return t;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TimeSeriesTable synthetic_weather(const SyntheticConfig& cfg, std::uint64_t seed) {
  if (cfg.days == 0) throw ConfigError("days", "must be >= 1");
  if (cfg.spikes > cfg.days) throw ConfigError("spikes", "more spikes than days");
  Rng rng(seed, "synthetic");
  TimeSeriesTable t = empty_table(cfg.days, cfg.start);
  const std::size_t n = cfg.days;
  std::vector<double> tmax(n), tmin(n), temp(n), hum(n), precip(n), slp(n), wind(n);
  double ar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ar = cfg.ar_phi * ar + rng.gaussian(0.0, cfg.ar_sigma);
    const double doy = day_of_year(t.dates[i]);
    tmax[i] = cfg.base + cfg.amplitude * std::sin(2.0 * std::numbers::pi * (doy - cfg.phase_day) / 365.25) + ar;
  }
  std::set<std::size_t> spike_days;
  while (spike_days.size() < cfg.spikes) spike_days.insert(rng.below(n));
  for (std::size_t d : spike_days) tmax[d] += rng.uniform01() < 0.5 ? -cfg.spike_size : cfg.spike_size;
  for (std::size_t i = 0; i < n; ++i) {
    tmin[i] = tmax[i] - 11.0 + rng.gaussian(0.0, 1.0);
    temp[i] = 0.5 * (tmax[i] + tmin[i]) + rng.gaussian(0.0, 0.5);
    hum[i] = std::clamp(45.0 - 0.8 * (tmax[i] - cfg.base) + rng.gaussian(0.0, 5.0), 5.0, 100.0);
    precip[i] = std::max(0.0, rng.gaussian(0.0, 1.0) - 1.0) * 3.0;
    slp[i] = 1013.0 - 0.3 * (tmax[i] - cfg.base) + rng.gaussian(0.0, 2.0);
    wind[i] = std::abs(rng.gaussian(10.0, 3.0));
  }
  t.set_column("tempmax", tmax);
  t.set_column("tempmin", tmin);
  t.set_column("temp", temp);
  t.set_column("humidity", hum);
  t.set_column("precip", precip);
  t.set_column("sealevelpressure", slp);
  t.set_column("windspeed", wind);
  return t;
}

TimeSeriesTable synthetic_random_walk(std::size_t days, std::uint64_t seed) {
  Rng rng(seed, "random_walk");
  TimeSeriesTable t = empty_table(days, "2019-01-01");
  std::vector<double> tmax(days), hum(days), wind(days), slp(days);
  double level = 30.0;
  for (std::size_t i = 0; i < days; ++i) {
    level += rng.gaussian(0.0, 1.0);
    tmax[i] = level;
    hum[i] = rng.gaussian(50.0, 10.0);
    wind[i] = rng.gaussian(10.0, 3.0);
    slp[i] = rng.gaussian(1013.0, 2.0);
  }
  t.set_column("tempmax", tmax);
  t.set_column("humidity", hum);
  t.set_column("windspeed", wind);
  t.set_column("sealevelpressure", slp);
  return t;
}

void write_csv(const TimeSeriesTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "datetime";
  for (const auto& c : table.numeric_order) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out << format_iso_date(table.dates[r]);
    for (const auto& c : table.numeric_order) {
      const double v = table.numeric.at(c)[r];
      out << ',';
      if (!is_missing(v)) out << format_number(v);
    }
    out << '\n';
  }
}

}  // namespace extremecast
