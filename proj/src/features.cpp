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

#include "extremecast/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "extremecast/errors.hpp"
#include "extremecast/quantile.hpp"
#include "extremecast/savitzky_golay.hpp"

namespace extremecast {

using namespace std::chrono;

const char* feature_mode_name(FeatureMode m) {
  switch (m) {
    case FeatureMode::Full: return "full";
    case FeatureMode::Minimal: return "minimal";
    case FeatureMode::RawOnly: return "raw_only";
  }
  return "full";
}

FeatureMode parse_feature_mode(const std::string& name) {
  if (name == "full") return FeatureMode::Full;
  if (name == "minimal") return FeatureMode::Minimal;
  if (name == "raw_only") return FeatureMode::RawOnly;
  throw ConfigError("training.feature_mode", "expected one of full, minimal, raw_only");
}

const std::set<std::string>& known_feature_groups() {
  static const std::set<std::string> groups{"calendar", "rolling",     "smoothing",
                                            "anomaly",  "interaction", "diff"};
  return groups;
}

void FeatureSpec::validate() const {
  if (sg_window % 2 == 0) throw ConfigError("features.sg_window", "must be odd");
  if (sg_window <= sg_poly) throw ConfigError("features.sg_window", "must exceed features.sg_poly");
  if (top_k < 1) throw ConfigError("features.top_k", "must be at least 1");
  for (std::size_t w : rolling_windows) {
    if (w < 2) throw ConfigError("features.rolling_windows", "windows must be at least 2");
  }
  for (const auto& g : enabled_groups) {
    if (!known_feature_groups().count(g)) throw ConfigError("features.enabled_groups", "unknown group " + g);
  }
  if (!(zscore_flag_threshold > 0.0)) {
    throw ConfigError("features.zscore_flag_threshold", "must be positive");
  }
}

bool FeatureSpec::group_enabled(const std::string& group) const { return enabled_groups.count(group) > 0; }

ColumnSet calendar_features(const std::vector<Date>& dates) {
  const std::size_t n = dates.size();
  std::vector<double> yr(n), mon(n), qtr(n), week(n), doy(n), dow(n), msin(n), mcos(n), dsin(n), dcos(n);
  for (std::size_t i = 0; i < n; ++i) {
    const year_month_day ymd{dates[i]};
    const auto m = static_cast<unsigned>(ymd.month());
    const int d = day_of_year(dates[i]);
    yr[i] = static_cast<int>(ymd.year());
    mon[i] = m;
    qtr[i] = (m - 1) / 3 + 1;
    week[i] = iso_week(dates[i]);
    doy[i] = d;
    dow[i] = day_of_week(dates[i]);
    const double ma = 2.0 * std::numbers::pi * static_cast<double>(m) / 12.0;
    const double da = 2.0 * std::numbers::pi * static_cast<double>(d) / 365.25;
    msin[i] = std::sin(ma);
    mcos[i] = std::cos(ma);
    dsin[i] = std::sin(da);
    dcos[i] = std::cos(da);
  }
  return {{"year", yr},          {"month", mon},         {"quarter", qtr},   {"week_of_year", week},
          {"day_of_year", doy},  {"day_of_week", dow},   {"month_sin", msin}, {"month_cos", mcos},
          {"doy_sin", dsin},     {"doy_cos", dcos}};
}

std::vector<std::string> cyclical_feature_names() { return {"month_sin", "month_cos", "doy_sin", "doy_cos"}; }

std::vector<double> rolling(const std::vector<double>& column, std::size_t window, RollingStat stat) {
  if (window < 1) throw std::invalid_argument("rolling window must be positive");
  std::vector<double> out(column.size());
  for (std::size_t t = 0; t < column.size(); ++t) {
    const std::size_t start = t + 1 >= window ? t + 1 - window : 0;
    std::span<const double> w(column.data() + start, t + 1 - start);
    switch (stat) {
      case RollingStat::Mean: out[t] = mean(w); break;
      case RollingStat::Min: out[t] = *std::min_element(w.begin(), w.end()); break;
      case RollingStat::Max: out[t] = *std::max_element(w.begin(), w.end()); break;
      case RollingStat::Std: out[t] = sample_std(w); break;
    }
  }
  return out;
}

ColumnSet temp_range_and_volatility(const TimeSeriesTable& table, const FeatureSpec& spec) {
  const auto& hi = table.column("tempmax");
  const auto& lo = table.column("tempmin");
  std::vector<double> range(hi.size());
  for (std::size_t i = 0; i < hi.size(); ++i) range[i] = hi[i] - lo[i];
  ColumnSet out;
  out.emplace_back("temp_range", range);
  for (std::size_t w : spec.rolling_windows) {
    out.emplace_back("temp_range_vol_" + std::to_string(w), rolling(range, w, RollingStat::Std));
  }
  return out;
}

Climatology fit_climatology(const TimeSeriesTable& table, const std::vector<std::string>& columns,
                            RowRange train_rows) {
  if (train_rows.size() == 0) throw DataError("climatology needs training rows");
  Climatology clim;
  for (const auto& name : columns) {
    const auto& col = table.column(name);
    std::array<std::vector<double>, 367> buckets;
    std::vector<double> all;
    for (std::size_t r = train_rows.begin; r < train_rows.end; ++r) {
      buckets[static_cast<std::size_t>(day_of_year(table.dates[r]))].push_back(col[r]);
      all.push_back(col[r]);
    }
    const double overall_mean = mean(all);
    const double overall_std = sample_std(all);
    Climatology::Stats stats;
    for (std::size_t d = 1; d <= 366; ++d) {
      const auto& b = buckets[d];
      if (!b.empty()) {
        stats.mean[d] = mean(b);
        stats.std[d] = sample_std(b);
      } else if (d == 366 && !buckets[365].empty()) {
        stats.mean[d] = mean(buckets[365]);
        stats.std[d] = sample_std(buckets[365]);
      } else {
        stats.mean[d] = overall_mean;
        stats.std[d] = overall_std;
      }
    }
    clim.columns[name] = stats;
  }
  return clim;
}

ColumnSet climatology_anomaly(const TimeSeriesTable& table, const Climatology& clim, double flag_threshold) {
  ColumnSet out;
  for (const auto& [name, stats] : clim.columns) {
    const auto& col = table.column(name);
    std::vector<double> anom(col.size()), z(col.size()), flag(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      const auto d = static_cast<std::size_t>(day_of_year(table.dates[i]));
      anom[i] = col[i] - stats.mean[d];
      z[i] = anom[i] / std::max(stats.std[d], 1e-8);
      flag[i] = std::abs(z[i]) > flag_threshold ? 1.0 : 0.0;
    }
    out.emplace_back(name + "_anom", std::move(anom));
    out.emplace_back(name + "_zscore", std::move(z));
    out.emplace_back(name + "_extreme_flag", std::move(flag));
  }
  return out;
}

ColumnSet interaction_indices(const TimeSeriesTable& table, const FeatureSpec& spec) {
  const auto& temp = table.column("temp");
  const auto& hum = table.column("humidity");
  const auto& hi = table.column("tempmax");
  const auto& precip = table.column("precip");
  std::vector<double> heat(temp.size()), drought(temp.size());
  for (std::size_t i = 0; i < temp.size(); ++i) {
    heat[i] = temp[i] + spec.heat_index_humidity_coef * hum[i];
    drought[i] = hi[i] - spec.drought_precip_coef * precip[i];
  }
  auto drought30 = rolling(drought, 30, RollingStat::Mean);
  return {{"heat_index_proxy", heat}, {"drought_index", drought}, {"drought_index_30d", drought30}};
}

std::vector<double> first_diff(const std::vector<double>& column) {
  std::vector<double> out(column.size(), 0.0);
  for (std::size_t i = 1; i < column.size(); ++i) out[i] = column[i] - column[i - 1];
  return out;
}

namespace {

std::vector<std::string> present(const TimeSeriesTable& table, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (table.has(n)) out.push_back(n);
  }
  return out;
}

const char* stat_name(RollingStat s) {
  switch (s) {
    case RollingStat::Mean: return "mean";
    case RollingStat::Min: return "min";
    case RollingStat::Max: return "max";
    case RollingStat::Std: return "std";
  }
  return "mean";
}

}  // namespace

FeatureSet build_features(const TimeSeriesTable& imputed, const FeatureSpec& spec, const Climatology& clim) {
  spec.validate();
  FeatureSet fs;
  fs.table = imputed;
  for (const auto& name : imputed.raw_columns()) {
    fs.candidates.push_back(name);
    fs.group_of[name] = "raw";
  }
  auto add = [&fs](const std::string& group, ColumnSet cols) {
    for (auto& [name, values] : cols) {
      fs.table.set_column(name, std::move(values));
      fs.candidates.push_back(name);
      fs.group_of[name] = group;
    }
  };

  if (spec.mode == FeatureMode::RawOnly) return fs;
  if (spec.mode == FeatureMode::Minimal) {
    ColumnSet cyc;
    const auto names = cyclical_feature_names();
    for (auto& col : calendar_features(imputed.dates)) {
      if (std::find(names.begin(), names.end(), col.first) != names.end()) cyc.push_back(std::move(col));
    }
    add("calendar", std::move(cyc));
    return fs;
  }

  if (spec.group_enabled("calendar")) add("calendar", calendar_features(imputed.dates));
  const auto keys = present(imputed, spec.key_columns);
  if (spec.group_enabled("rolling")) {
    if (imputed.has("tempmax") && imputed.has("tempmin")) add("rolling", temp_range_and_volatility(imputed, spec));
    ColumnSet cols;
    for (const auto& c : keys) {
      for (std::size_t w : spec.rolling_windows) {
        for (auto stat : {RollingStat::Mean, RollingStat::Min, RollingStat::Max, RollingStat::Std}) {
          cols.emplace_back(c + "_roll" + std::to_string(w) + "_" + stat_name(stat),
                            rolling(imputed.column(c), w, stat));
        }
      }
    }
    add("rolling", std::move(cols));
  }
  if (spec.group_enabled("smoothing")) {
    ColumnSet cols;
    for (const auto& c : present(imputed, spec.smooth_columns)) {
      cols.emplace_back(c + "_sg", savitzky_golay(imputed.column(c), spec.sg_window, spec.sg_poly));
    }
    add("smoothing", std::move(cols));
  }
  if (spec.group_enabled("anomaly")) add("anomaly", climatology_anomaly(imputed, clim, spec.zscore_flag_threshold));
  if (spec.group_enabled("interaction") && imputed.has("temp") && imputed.has("humidity") &&
      imputed.has("tempmax") && imputed.has("precip")) {
    add("interaction", interaction_indices(imputed, spec));
  }
  if (spec.group_enabled("diff")) {
    ColumnSet cols;
    for (const auto& c : keys) cols.emplace_back(c + "_diff", first_diff(imputed.column(c)));
    add("diff", std::move(cols));
  }
  return fs;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

std::vector<RankedFeature> rank_features(const TimeSeriesTable& table, const std::vector<std::string>& candidates,
                                         const std::string& target, RowRange train_rows) {
  if (train_rows.size() < 3) throw DataError("feature selection needs at least 3 training rows");
  const auto& tgt = table.column(target);
  std::vector<double> next(tgt.begin() + static_cast<std::ptrdiff_t>(train_rows.begin + 1),
                           tgt.begin() + static_cast<std::ptrdiff_t>(train_rows.end));
  std::vector<RankedFeature> ranked;
  for (const auto& name : candidates) {
    const auto& col = table.column(name);
    std::vector<double> x(col.begin() + static_cast<std::ptrdiff_t>(train_rows.begin),
                          col.begin() + static_cast<std::ptrdiff_t>(train_rows.end - 1));
    const bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
    ranked.push_back({name, constant ? 0.0 : pearson(x, next), constant});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.constant != b.constant) return !a.constant;
    const double ra = std::abs(a.correlation), rb = std::abs(b.correlation);
    if (ra != rb) return ra > rb;
    return a.name < b.name;
  });
  return ranked;
}

std::vector<std::string> select_topk(const TimeSeriesTable& table, const std::vector<std::string>& candidates,
                                     const std::string& target, RowRange train_rows, std::size_t k) {
  const auto ranked = rank_features(table, candidates, target, train_rows);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].name);
  return out;
}

}  // namespace extremecast
