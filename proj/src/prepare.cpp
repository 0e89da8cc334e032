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

#include "extremecast/prepare.hpp"

#include <algorithm>
#include <cmath>

#include "extremecast/errors.hpp"
#include "extremecast/rng.hpp"

namespace extremecast {

namespace {

std::vector<std::string> climatology_columns(const TimeSeriesTable& table, const FeatureSpec& spec) {
  std::vector<std::string> out;
  for (const auto& c : spec.key_columns) {
    if (table.has(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

void DatasetConfig::validate() const {
  if (lookback == 0) throw ConfigError("dataset.lookback", "must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("dataset.train_fraction", "must be in (0, 1)");
  }
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) throw ConfigError("dataset.val_fraction", "must be in (0, 1)");
}

FeatureSet derive_features(const TimeSeriesTable& imputed, const FeatureSpec& spec, RowRange train_rows) {
  const Climatology clim = fit_climatology(imputed, climatology_columns(imputed, spec), train_rows);
  return build_features(imputed, spec, clim);
}

PreparedDataset prepare_dataset(const TimeSeriesTable& raw, const DatasetConfig& dataset,
                                const FeatureSpec& spec) {
  dataset.validate();
  spec.validate();
  const TimeSeriesTable imputed = impute(raw);
  const std::string target{kTargetColumn};
  PreparedDataset out;
  out.lookback = dataset.lookback;
  out.mode = spec.mode;
  out.split = chronological_split(imputed.dates, dataset.lookback, dataset.train_fraction, dataset.val_fraction);
  const FeatureSet fs = derive_features(imputed, spec, out.split.train);
  for (const auto& name : fs.candidates) {
    for (double v : fs.table.column(name)) {
      if (!std::isfinite(v)) throw DataError("derived feature " + name + " has non-finite values");
    }
  }

  const auto ranked = rank_features(fs.table, fs.candidates, target, out.split.train);
  std::vector<std::string> selected;
  for (std::size_t i = 0; i < ranked.size() && i < spec.top_k; ++i) selected.push_back(ranked[i].name);
  if (std::find(selected.begin(), selected.end(), target) == selected.end()) {
    if (selected.size() == spec.top_k) selected.pop_back();
    selected.push_back(target);
  }
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    FeatureAuditRow row;
    row.name = ranked[i].name;
    row.group = fs.group_of.at(ranked[i].name);
    row.correlation = ranked[i].correlation;
    row.constant = ranked[i].constant;
    row.rank = i + 1;
    row.selected = std::find(selected.begin(), selected.end(), row.name) != selected.end();
    out.audit.push_back(row);
  }

  out.feature_names = selected;
  out.target_index = static_cast<std::size_t>(
      std::find(selected.begin(), selected.end(), target) - selected.begin());
  out.scaler = fit_scaler(fs.table, selected, out.split.train);

  FeatureMatrix m;
  m.dates = fs.table.dates;
  m.feature_names = selected;
  m.values = Tensor::matrix(fs.table.rows(), selected.size());
  for (std::size_t j = 0; j < selected.size(); ++j) {
    const auto scaled = apply_scale(fs.table.column(selected[j]), out.scaler.at(selected[j]));
    for (std::size_t r = 0; r < scaled.size(); ++r) m.values.at(r, j) = scaled[r];
  }
  m.target = apply_scale(fs.table.column(target), out.target_scale());
  out.windows = make_windows(m, out.split, dataset.lookback);
  out.matrix = std::move(m);
  out.series_dates = fs.table.dates;
  out.series_target = fs.table.column(target);
  return out;
}

CausalityReport audit_causality(const TimeSeriesTable& raw, const DatasetConfig& dataset,
                                const FeatureSpec& spec, std::size_t cuts, std::uint64_t seed) {
  const TimeSeriesTable imputed = impute(raw);
  const SplitSpec split = chronological_split(imputed.dates, dataset.lookback, dataset.train_fraction,
                                              dataset.val_fraction);
  const Climatology clim = fit_climatology(imputed, climatology_columns(imputed, spec), split.train);
  const FeatureSet full = build_features(imputed, spec, clim);
  CausalityReport report;
  Rng rng(seed, "causality");
  const std::size_t n = imputed.rows();
  for (std::size_t c = 0; c < cuts; ++c) {
    const std::size_t cut = rng.below(n);  // last kept row
    const FeatureSet part = build_features(imputed.head(cut + 1), spec, clim);
    ++report.cuts;
    for (const auto& name : full.candidates) {
      ++report.columns_checked;
      const auto& a = full.table.column(name);
      const auto& b = part.table.column(name);
      for (std::size_t r = 0; r <= cut; ++r) {
        const bool same = a[r] == b[r] || (std::isnan(a[r]) && std::isnan(b[r]));
        if (!same) {
          if (report.mismatches == 0) report.first_mismatch = name + "@" + format_iso_date(imputed.dates[r]);
          ++report.mismatches;
        }
      }
    }
  }

  const PreparedDataset prepared = prepare_dataset(raw, dataset, spec);
  const auto check = [&](const WindowedDataset& ds, RowRange rows) {
    for (const auto& s : ds.samples) {
      ++report.windows_checked;
      const auto it = std::lower_bound(prepared.series_dates.begin(), prepared.series_dates.end(), s.target_date);
      const std::size_t target_row = static_cast<std::size_t>(it - prepared.series_dates.begin());
      if (target_row < ds.lookback || !rows.contains(target_row) || !rows.contains(target_row - ds.lookback)) {
        ++report.boundary_violations;
      }
    }
  };
  check(prepared.windows.train, prepared.split.train);
  check(prepared.windows.val, prepared.split.val);
  check(prepared.windows.test, prepared.split.test);
  return report;
}

}  // namespace extremecast
