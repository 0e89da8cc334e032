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

#include "extremecast/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "extremecast/errors.hpp"

namespace extremecast {

using namespace std::chrono;

Date parse_iso_date(std::string_view text) {
  auto bad = [&]() { return DataError("invalid date '" + std::string(text) + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [&](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size()) throw bad();
  };
  parse(text.substr(0, 4), y);
  parse(text.substr(5, 2), m);
  parse(text.substr(8, 2), d);
  const year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) throw bad();
  return sys_days{ymd};
}

std::string format_iso_date(Date d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

int day_of_year(Date d) {
  const year_month_day ymd{d};
  const sys_days jan1{ymd.year() / January / 1};
  return static_cast<int>((d - jan1).count()) + 1;
}

int day_of_week(Date d) {
  // 1970-01-01 was a Thursday.
  const long long n = d.time_since_epoch().count();
  return static_cast<int>(((n % 7) + 7 + 3) % 7);
}

int iso_week(Date d) {
  // The ISO week belongs to the year containing its Thursday.
  const Date thursday = d + days{3 - day_of_week(d)};
  return (day_of_year(thursday) - 1) / 7 + 1;
}

bool is_missing(double v) { return std::isnan(v); }

const std::vector<std::string>& raw_numeric_columns() {
  static const std::vector<std::string> names{
      "tempmax",    "tempmin",     "temp",       "feelslikemax",     "feelslikemin",
      "feelslike",  "dew",         "humidity",   "precip",           "precipprob",
      "precipcover", "snow",       "snowdepth",  "windgust",         "windspeed",
      "winddir",    "sealevelpressure", "cloudcover", "visibility", "solarradiation",
      "solarenergy", "uvindex",    "moonphase"};
  return names;
}

const std::vector<std::string>& text_column_names() {
  static const std::vector<std::string> names{"preciptype", "precipctype", "sunrise", "sunset",
                                              "conditions", "description", "icon",   "name",
                                              "stations"};
  return names;
}

bool TimeSeriesTable::has(std::string_view name) const {
  return numeric.find(std::string(name)) != numeric.end();
}

const std::vector<double>& TimeSeriesTable::column(std::string_view name) const {
  auto it = numeric.find(std::string(name));
  if (it == numeric.end()) throw DataError("missing column '" + std::string(name) + "'");
  return it->second;
}

void TimeSeriesTable::set_column(const std::string& name, std::vector<double> values) {
  if (values.size() != dates.size()) {
    throw DataError("column '" + name + "' length does not match the date index");
  }
  if (numeric.find(name) == numeric.end()) numeric_order.push_back(name);
  numeric[name] = std::move(values);
}

std::vector<std::string> TimeSeriesTable::raw_columns() const {
  std::vector<std::string> out;
  for (const auto& name : raw_numeric_columns()) {
    if (has(name)) out.push_back(name);
  }
  return out;
}

TimeSeriesTable TimeSeriesTable::head(std::size_t n) const {
  n = std::min(n, rows());
  TimeSeriesTable out;
  out.target_name = target_name;
  out.dates.assign(dates.begin(), dates.begin() + static_cast<std::ptrdiff_t>(n));
  out.numeric_order = numeric_order;
  for (const auto& [name, col] : numeric) out.numeric[name].assign(col.begin(), col.begin() + n);
  for (const auto& [name, col] : text) out.text[name].assign(col.begin(), col.begin() + n);
  return out;
}

namespace {

// RFC 4180 style: comma separated, double-quoted fields may contain commas,
// quotes are escaped by doubling.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool parse_number(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

TimeSeriesTable parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV input");
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);

  const auto date_it = std::find(header.begin(), header.end(), "datetime");
  if (date_it == header.end()) throw DataError("header has no 'datetime' column");
  const auto date_col = static_cast<std::size_t>(date_it - header.begin());
  if (std::find(header.begin(), header.end(), std::string(kTargetColumn)) == header.end()) {
    throw DataError("header has no '" + std::string(kTargetColumn) + "' column");
  }
  std::set<std::string> seen;
  for (const auto& h : header) {
    if (!seen.insert(h).second) throw DataError("duplicate header column '" + h + "'");
  }

  const auto& text_names = text_column_names();
  std::vector<Date> dates;
  std::vector<std::vector<std::string>> cells(header.size());
  std::size_t row_number = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row_number;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw DataError("row " + std::to_string(row_number) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    Date d;
    try {
      d = parse_iso_date(trim(fields[date_col]));
    } catch (const DataError& e) {
      throw DataError("row " + std::to_string(row_number) + ": " + e.what());
    }
    if (!dates.empty()) {
      if (d == dates.back()) {
        throw DataError("row " + std::to_string(row_number) + ": duplicate date " + format_iso_date(d));
      }
      if (d < dates.back()) {
        throw DataError("row " + std::to_string(row_number) + ": dates not increasing at " +
                        format_iso_date(d));
      }
    }
    dates.push_back(d);
    for (std::size_t c = 0; c < header.size(); ++c) cells[c].push_back(std::move(fields[c]));
  }
  if (dates.empty()) throw DataError("CSV has no data rows");

  // Daily cadence: calendar gaps become all-missing rows.
  std::vector<std::size_t> source_row;  // index into parsed rows, or npos
  std::vector<Date> full_dates;
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = 0; r < dates.size(); ++r) {
    if (r > 0) {
      for (Date g = dates[r - 1] + days{1}; g < dates[r]; g += days{1}) {
        full_dates.push_back(g);
        source_row.push_back(npos);
      }
    }
    full_dates.push_back(dates[r]);
    source_row.push_back(r);
  }

  TimeSeriesTable table;
  table.dates = full_dates;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == date_col) continue;
    const std::string& name = header[c];
    const bool declared_text = std::find(text_names.begin(), text_names.end(), name) != text_names.end();
    std::vector<double> values(full_dates.size(), std::numeric_limits<double>::quiet_NaN());
    bool numeric = !declared_text;
    for (std::size_t r = 0; numeric && r < full_dates.size(); ++r) {
      if (source_row[r] == npos) continue;
      const std::string cell = trim(cells[c][source_row[r]]);
      if (cell.empty()) continue;
      double v = 0.0;
      if (!parse_number(cell, v)) {
        numeric = false;
        break;
      }
      values[r] = v;
    }
    if (numeric) {
      table.numeric_order.push_back(name);
      table.numeric[name] = std::move(values);
    } else {
      auto& col = table.text[name];
      col.resize(full_dates.size());
      for (std::size_t r = 0; r < full_dates.size(); ++r) {
        if (source_row[r] != npos) col[r] = cells[c][source_row[r]];
      }
    }
  }
  if (!table.has(kTargetColumn)) {
    throw DataError("target column '" + std::string(kTargetColumn) + "' is not numeric");
  }
  return table;
}

TimeSeriesTable load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return parse_csv(in);
}

std::vector<double> impute_column(const std::vector<double>& column, const std::string& name) {
  std::vector<double> out = column;
  std::vector<std::size_t> known;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!is_missing(out[i])) known.push_back(i);
  }
  if (known.empty()) throw DataError("cannot impute empty column " + name);
  for (std::size_t k = 0; k + 1 < known.size(); ++k) {
    const std::size_t a = known[k], b = known[k + 1];
    for (std::size_t i = a + 1; i < b; ++i) {
      const double w = static_cast<double>(i - a) / static_cast<double>(b - a);
      out[i] = out[a] + w * (out[b] - out[a]);
    }
  }
  for (std::size_t i = 0; i < known.front(); ++i) out[i] = out[known.front()];
  for (std::size_t i = known.back() + 1; i < out.size(); ++i) out[i] = out[known.back()];
  return out;
}

TimeSeriesTable impute(const TimeSeriesTable& table) {
  TimeSeriesTable out = table;
  for (auto& [name, col] : out.numeric) col = impute_column(col, name);
  return out;
}

}  // namespace extremecast
