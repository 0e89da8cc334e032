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

#include "extremecast/data_pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/errors.hpp"
#include "extremecast/quantile.hpp"

namespace extremecast {

const ColumnScale& ScalerParams::at(const std::string& name) const {
  auto it = columns.find(name);
  if (it == columns.end()) throw DataError("no scaler parameters for column '" + name + "'");
  return it->second;
}

ColumnScale fit_column_scale(const std::vector<double>& column, RowRange rows) {
  if (rows.size() == 0) throw DataError("cannot fit scaler on an empty range");
  if (rows.end > column.size()) throw DataError("scaler range exceeds column length");
  std::vector<double> sorted(column.begin() + static_cast<std::ptrdiff_t>(rows.begin),
                             column.begin() + static_cast<std::ptrdiff_t>(rows.end));
  std::sort(sorted.begin(), sorted.end());
  ColumnScale s;
  s.median = quantile_sorted(sorted, 0.5);
  s.iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  return s;
}

ScalerParams fit_scaler(const TimeSeriesTable& table, const std::vector<std::string>& columns,
                        RowRange train_rows) {
  ScalerParams params;
  for (const auto& name : columns) params.columns[name] = fit_column_scale(table.column(name), train_rows);
  return params;
}

std::vector<double> apply_scale(const std::vector<double>& column, const ColumnScale& scale) {
  std::vector<double> out(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) out[i] = scale.apply(column[i]);
  return out;
}

std::vector<double> invert_scale(const std::vector<double>& column, const ColumnScale& scale) {
  std::vector<double> out(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) out[i] = scale.invert(column[i]);
  return out;
}

SplitSpec chronological_split(const std::vector<Date>& dates, std::size_t lookback, double train_frac,
                              double val_frac_of_train) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw ConfigError("dataset.train_frac", "must lie strictly between 0 and 1");
  }
  if (!(val_frac_of_train > 0.0 && val_frac_of_train < 1.0)) {
    throw ConfigError("dataset.val_frac", "must lie strictly between 0 and 1");
  }
  const std::size_t n = dates.size();
  const auto period = static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_frac));
  const auto n_val = static_cast<std::size_t>(std::floor(static_cast<double>(period) * val_frac_of_train));
  SplitSpec s;
  s.val = {0, n_val};
  s.train = {n_val, period};
  s.test = {period, n};
  for (const auto& [name, r] : {std::pair{"validation", s.val}, {"train", s.train}, {"test", s.test}}) {
    if (r.size() < lookback + 1) {
      throw DataError(std::string(name) + " partition has " + std::to_string(r.size()) +
                      " rows; at least lookback+1 = " + std::to_string(lookback + 1) + " required");
    }
  }
  s.val_first = dates[s.val.begin];
  s.val_last = dates[s.val.end - 1];
  s.train_first = dates[s.train.begin];
  s.train_last = dates[s.train.end - 1];
  s.test_first = dates[s.test.begin];
  s.test_last = dates[s.test.end - 1];
  return s;
}

const char* partition_name(Partition p) {
  switch (p) {
    case Partition::Train: return "train";
    case Partition::Val: return "val";
    case Partition::Test: return "test";
    case Partition::All: return "all";
  }
  return "all";
}

Partition parse_partition(const std::string& name) {
  if (name == "train") return Partition::Train;
  if (name == "val") return Partition::Val;
  if (name == "test") return Partition::Test;
  if (name == "all") return Partition::All;
  throw DataError("unknown partition '" + name + "'");
}

std::size_t WindowedDataset::feature_index(const std::string& name) const {
  for (std::size_t i = 0; i < feature_names.size(); ++i) {
    if (feature_names[i] == name) return i;
  }
  return feature_names.size();
}

WindowedDataset make_windows(const FeatureMatrix& matrix, RowRange rows, std::size_t lookback,
                             Partition partition) {
  if (lookback == 0) throw ConfigError("dataset.lookback", "must be at least 1");
  if (lookback >= rows.size()) {
    throw DataError(std::string(partition_name(partition)) + " partition of " +
                    std::to_string(rows.size()) + " rows is too short for lookback " +
                    std::to_string(lookback));
  }
  const std::size_t f = matrix.feature_names.size();
  WindowedDataset ds;
  ds.partition = partition;
  ds.lookback = lookback;
  ds.feature_names = matrix.feature_names;
  ds.samples.reserve(rows.size() - lookback);
  for (std::size_t target = rows.begin + lookback; target < rows.end; ++target) {
    Sample s;
    s.x = Tensor::matrix(lookback, f);
    for (std::size_t t = 0; t < lookback; ++t) {
      const double* src = matrix.values.row(target - lookback + t);
      std::copy(src, src + f, s.x.row(t));
    }
    s.y = matrix.target[target];
    s.target_date = matrix.dates[target];
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

PartitionedWindows make_windows(const FeatureMatrix& matrix, const SplitSpec& split, std::size_t lookback) {
  return PartitionedWindows{make_windows(matrix, split.train, lookback, Partition::Train),
                            make_windows(matrix, split.val, lookback, Partition::Val),
                            make_windows(matrix, split.test, lookback, Partition::Test)};
}

}  // namespace extremecast
