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

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "extremecast/data_pipeline.hpp"
#include "extremecast/table.hpp"

namespace extremecast {

enum class FeatureMode { Full, Minimal, RawOnly };
const char* feature_mode_name(FeatureMode m);
FeatureMode parse_feature_mode(const std::string& name);

struct FeatureSpec {
  std::vector<std::size_t> rolling_windows{7, 30};
  std::size_t sg_window = 7;
  std::size_t sg_poly = 3;
  double zscore_flag_threshold = 2.0;
  std::size_t top_k = 30;
  // Subset of {calendar, rolling, smoothing, anomaly, interaction, diff}.
  std::set<std::string> enabled_groups{"calendar", "rolling", "smoothing",
                                       "anomaly",  "interaction", "diff"};
  // Series that receive rolling, anomaly and difference features.
  std::vector<std::string> key_columns{"tempmax", "tempmin", "temp", "feelslike"};
  // Series that receive Savitzky-Golay smoothing.
  std::vector<std::string> smooth_columns{"tempmax", "tempmin", "temp"};
  double heat_index_humidity_coef = 0.1;
  double drought_precip_coef = 2.0;
  FeatureMode mode = FeatureMode::Full;

  // Throws ConfigError with a "features.*" path.
  void validate() const;
  bool group_enabled(const std::string& group) const;
};

const std::set<std::string>& known_feature_groups();

// Named derived columns in emission order.
using ColumnSet = std::vector<std::pair<std::string, std::vector<double>>>;

// year, month, quarter, week_of_year, day_of_year, day_of_week,
// month_sin/cos (period 12), doy_sin/cos (period 365.25).
ColumnSet calendar_features(const std::vector<Date>& dates);
std::vector<std::string> cyclical_feature_names();

enum class RollingStat { Mean, Min, Max, Std };
// Right-aligned trailing window including the current day; partial windows
// at the start. Std uses n-1 and is 0 for a single point.
std::vector<double> rolling(const std::vector<double>& column, std::size_t window, RollingStat stat);

// temp_range, temp_range_vol_7, temp_range_vol_30 (uses spec.rolling_windows).
ColumnSet temp_range_and_volatility(const TimeSeriesTable& table, const FeatureSpec& spec);

// Day-of-year statistics fitted on training rows only.
struct Climatology {
  struct Stats {
    std::array<double, 367> mean{};  // index 1..366
    std::array<double, 367> std{};
  };
  std::map<std::string, Stats> columns;
};

Climatology fit_climatology(const TimeSeriesTable& table, const std::vector<std::string>& columns,
                            RowRange train_rows);
// <c>_anom, <c>_zscore, <c>_extreme_flag for every climatology column.
ColumnSet climatology_anomaly(const TimeSeriesTable& table, const Climatology& clim,
                              double flag_threshold = 2.0);

// heat_index_proxy, drought_index, drought_index_30d.
ColumnSet interaction_indices(const TimeSeriesTable& table, const FeatureSpec& spec);

std::vector<double> first_diff(const std::vector<double>& column);

struct FeatureSet {
  TimeSeriesTable table;  // imputed input plus derived columns
  // Raw columns first, then derived columns in emission order.
  std::vector<std::string> candidates;
  std::map<std::string, std::string> group_of;  // "raw" for raw columns
};

// Adds every derived column allowed by spec.mode/enabled groups to a copy of
// an imputed table. Column naming:
//   <c>_roll<w>_{mean,min,max,std}, <c>_sg, <c>_diff, <c>_anom, <c>_zscore,
//   <c>_extreme_flag, temp_range, temp_range_vol_<w>, heat_index_proxy, ...
// Unknown CSV columns stay in the table but are never candidates.
FeatureSet build_features(const TimeSeriesTable& imputed, const FeatureSpec& spec, const Climatology& clim);

struct RankedFeature {
  std::string name;
  double correlation = 0.0;  // Pearson r of feature(t) vs target(t+1), 0 when constant
  bool constant = false;
};

// Ranks candidates by |r| computed over consecutive training-row pairs.
// Ties and constant features are ordered by name; constants rank last.
std::vector<RankedFeature> rank_features(const TimeSeriesTable& table,
                                         const std::vector<std::string>& candidates,
                                         const std::string& target, RowRange train_rows);
std::vector<std::string> select_topk(const TimeSeriesTable& table, const std::vector<std::string>& candidates,
                                     const std::string& target, RowRange train_rows, std::size_t k);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace extremecast
