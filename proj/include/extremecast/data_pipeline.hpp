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

#include <map>
#include <string>
#include <vector>

#include "extremecast/table.hpp"
#include "extremecast/tensor.hpp"

namespace extremecast {

// Robust scaling: x' = (x - median) / iqr, divisor 1 when iqr == 0.
struct ColumnScale {
  double median = 0.0;
  double iqr = 1.0;

  double divisor() const noexcept { return iqr == 0.0 ? 1.0 : iqr; }
  double apply(double x) const noexcept { return (x - median) / divisor(); }
  double invert(double x) const noexcept { return x * divisor() + median; }
};

struct ScalerParams {
  std::map<std::string, ColumnScale> columns;

  const ColumnScale& at(const std::string& name) const;
};

// Half-open row interval [begin, end) with its calendar bounds.
struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t row) const noexcept { return row >= begin && row < end; }
};

ColumnScale fit_column_scale(const std::vector<double>& column, RowRange rows);
ScalerParams fit_scaler(const TimeSeriesTable& table, const std::vector<std::string>& columns,
                        RowRange train_rows);
std::vector<double> apply_scale(const std::vector<double>& column, const ColumnScale& scale);
std::vector<double> invert_scale(const std::vector<double>& column, const ColumnScale& scale);

// Chronological partitions. The final (1 - train_frac) of rows is the test
// set; the *first* val_frac_of_train of the training period is validation and
// the remainder of the training period is train.
struct SplitSpec {
  RowRange val;
  RowRange train;
  RowRange test;
  Date val_first, val_last, train_first, train_last, test_first, test_last;
};

SplitSpec chronological_split(const std::vector<Date>& dates, std::size_t lookback,
                              double train_frac = 0.8, double val_frac_of_train = 0.2);

struct Sample {
  Tensor x;  // [L x F], row t is day target_date - L + t
  double y = 0.0;
  Date target_date{};
};

enum class Partition { Train, Val, Test, All };
const char* partition_name(Partition p);
Partition parse_partition(const std::string& name);

struct WindowedDataset {
  Partition partition = Partition::All;
  std::size_t lookback = 30;
  std::vector<std::string> feature_names;
  std::vector<Sample> samples;

  std::size_t size() const noexcept { return samples.size(); }
  std::size_t feature_count() const noexcept { return feature_names.size(); }
  // Index of a feature, or feature_count() if absent.
  std::size_t feature_index(const std::string& name) const;
};

// Scaled feature rows plus the scaled target, aligned on one date index.
struct FeatureMatrix {
  std::vector<Date> dates;
  std::vector<std::string> feature_names;
  Tensor values;               // [rows x F]
  std::vector<double> target;  // scaled target per row
};

// Windows fully inside `rows`: target day d in rows, inputs d-L .. d-1 also in rows.
WindowedDataset make_windows(const FeatureMatrix& matrix, RowRange rows, std::size_t lookback,
                             Partition partition);

struct PartitionedWindows {
  WindowedDataset train;
  WindowedDataset val;
  WindowedDataset test;
};

PartitionedWindows make_windows(const FeatureMatrix& matrix, const SplitSpec& split,
                                std::size_t lookback);

}  // namespace extremecast
