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
#include <map>
#include <string>
#include <vector>

#include "extremecast/data_pipeline.hpp"
#include "extremecast/features.hpp"
#include "extremecast/table.hpp"

namespace extremecast {

struct DatasetConfig {
  std::string csv_path;
  std::size_t lookback = 30;
  double train_fraction = 0.8;
  double val_fraction = 0.2;  // of the training period

  void validate() const;
};

struct FeatureAuditRow {
  std::string name;
  std::string group;
  double correlation = 0.0;
  bool constant = false;
  std::size_t rank = 0;  // 1-based
  bool selected = false;
};

// Everything downstream of the CSV: selected features, fitted scaler, split
// and windows.
struct PreparedDataset {
  static constexpr int kSchemaVersion = 1;
  std::string target{kTargetColumn};
  std::vector<std::string> feature_names;
  std::size_t target_index = 0;
  std::size_t lookback = 30;
  FeatureMode mode = FeatureMode::Full;
  ScalerParams scaler;
  SplitSpec split;
  FeatureMatrix matrix;  // scaled rows for every date
  PartitionedWindows windows;
  std::vector<Date> series_dates;      // all rows
  std::vector<double> series_target;   // raw target per row
  std::vector<FeatureAuditRow> audit;

  const ColumnScale& target_scale() const { return scaler.at(target); }
};

// Feature columns for the whole table with day-of-year statistics fitted on
// `train_rows`.
FeatureSet derive_features(const TimeSeriesTable& imputed, const FeatureSpec& spec, RowRange train_rows);

PreparedDataset prepare_dataset(const TimeSeriesTable& raw, const DatasetConfig& dataset,
                                const FeatureSpec& spec);

struct CausalityReport {
  std::size_t cuts = 0;
  std::size_t columns_checked = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;  // "<column>@<date>"
  std::size_t windows_checked = 0;
  std::size_t boundary_violations = 0;
  bool passed() const noexcept { return mismatches == 0 && boundary_violations == 0; }
};

// Recomputes every derived column on the table truncated at random cut dates
// (climatology held at the full-run fit) and compares rows up to the cut.
// Also checks that every window lies inside its own partition.
CausalityReport audit_causality(const TimeSeriesTable& raw, const DatasetConfig& dataset,
                                const FeatureSpec& spec, std::size_t cuts, std::uint64_t seed);

}  // namespace extremecast
