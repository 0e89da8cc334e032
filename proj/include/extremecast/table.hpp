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

#include <chrono>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace extremecast {

using Date = std::chrono::sys_days;

// Throws DataError on anything that is not a valid YYYY-MM-DD calendar date.
Date parse_iso_date(std::string_view text);
std::string format_iso_date(Date d);
int day_of_year(Date d);
int iso_week(Date d);
// 0 = Monday ... 6 = Sunday
int day_of_week(Date d);

bool is_missing(double v);
inline constexpr std::string_view kTargetColumn = "tempmax";

// Numeric weather variables that may enter the feature matrix.
const std::vector<std::string>& raw_numeric_columns();
// Columns kept as text and never used as numeric features.
const std::vector<std::string>& text_column_names();

// Date-indexed columnar daily records. Missing numeric cells are NaN.
struct TimeSeriesTable {
  std::vector<Date> dates;
  std::vector<std::string> numeric_order;
  std::map<std::string, std::vector<double>> numeric;
  std::map<std::string, std::vector<std::string>> text;
  std::string target_name{kTargetColumn};

  std::size_t rows() const noexcept { return dates.size(); }
  bool has(std::string_view name) const;
  const std::vector<double>& column(std::string_view name) const;
  void set_column(const std::string& name, std::vector<double> values);
  // Recognised raw numeric columns present in this table, in canonical order.
  std::vector<std::string> raw_columns() const;
  // First `n` rows.
  TimeSeriesTable head(std::size_t n) const;
};

TimeSeriesTable load_csv(const std::string& path);
TimeSeriesTable parse_csv(std::istream& in);

// Interior gaps: linear interpolation between nearest known neighbours.
// Leading gaps: first known value; trailing gaps: last known value.
// Throws DataError("cannot impute empty column <name>") for all-missing columns.
TimeSeriesTable impute(const TimeSeriesTable& table);
std::vector<double> impute_column(const std::vector<double>& column, const std::string& name);

}  // namespace extremecast
