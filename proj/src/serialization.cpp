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

#include "extremecast/serialization.hpp"

#include <cstdio>
#include <fstream>

#include "extremecast/baselines.hpp"
#include "extremecast/errors.hpp"
#include "extremecast/mmwstm_adran.hpp"

namespace extremecast {

using nlohmann::json;

namespace {

json range_json(RowRange r, Date first, Date last) {
  return json{{"begin", r.begin}, {"end", r.end}, {"first", format_iso_date(first)}, {"last", format_iso_date(last)}};
}

RowRange range_from(const json& j, Date& first, Date& last) {
  first = parse_iso_date(j.at("first").get<std::string>());
  last = parse_iso_date(j.at("last").get<std::string>());
  return RowRange{j.at("begin").get<std::size_t>(), j.at("end").get<std::size_t>()};
}

json scaler_json(const ScalerParams& s) {
  json j = json::object();
  for (const auto& [name, c] : s.columns) j[name] = {{"median", c.median}, {"iqr", c.iqr}};
  return j;
}

ScalerParams scaler_from(const json& j) {
  ScalerParams s;
  for (const auto& [name, c] : j.items()) {
    s.columns[name] = ColumnScale{c.at("median").get<double>(), c.at("iqr").get<double>()};
  }
  return s;
}

json dates_json(const std::vector<Date>& dates) {
  json a = json::array();
  for (Date d : dates) a.push_back(format_iso_date(d));
  return a;
}

std::vector<Date> dates_from(const json& j) {
  std::vector<Date> out;
  for (const auto& d : j) out.push_back(parse_iso_date(d.get<std::string>()));
  return out;
}

json model_json(const Forecaster& model) {
  switch (model.kind()) {
    case ModelKind::Mmwstm: return model_config_json(dynamic_cast<const MmwstmAdran&>(model).config());
    case ModelKind::Tcn: return tcn_config_json(dynamic_cast<const Tcn&>(model).config());
    case ModelKind::NBeats: return nbeats_config_json(dynamic_cast<const NBeats&>(model).config());
    case ModelKind::Persistence:
      return json{{"target_index", dynamic_cast<const Persistence&>(model).target_index()}};
  }
  return json::object();
}

std::unique_ptr<Forecaster> model_from_json(ModelKind kind, const json& j) {
  switch (kind) {
    case ModelKind::Mmwstm: return std::make_unique<MmwstmAdran>(parse_model_config(j, "model_config"));
    case ModelKind::Tcn: return std::make_unique<Tcn>(parse_tcn_config(j, "model_config"));
    case ModelKind::NBeats: return std::make_unique<NBeats>(parse_nbeats_config(j, "model_config"));
    case ModelKind::Persistence: return std::make_unique<Persistence>(j.at("target_index").get<std::size_t>());
  }
  throw CompatibilityError("unknown model kind");
}

}  // namespace

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
}

std::unique_ptr<Forecaster> build_model(ModelKind kind, const RunConfig& cfg, const PreparedDataset& data) {
  switch (kind) {
    case ModelKind::Mmwstm: {
      ModelConfig m = cfg.model;
      m.input_dim = data.feature_names.size();
      m.lookback = data.lookback;
      return std::make_unique<MmwstmAdran>(m);
    }
    case ModelKind::Tcn: {
      TcnConfig t = cfg.tcn;
      t.input_dim = data.feature_names.size();
      return std::make_unique<Tcn>(t);
    }
    case ModelKind::NBeats: {
      NBeatsConfig n = cfg.nbeats;
      n.lookback = data.lookback;
      n.target_index = data.target_index;
      return std::make_unique<NBeats>(n);
    }
    case ModelKind::Persistence: return std::make_unique<Persistence>(data.target_index);
  }
  throw std::invalid_argument("unknown model kind");
}

json dataset_json(const PreparedDataset& data) {
  const auto& s = data.split;
  json values = json::array();
  for (double v : data.matrix.values.values()) values.push_back(v);
  return json{
      {"schema_version", kSchemaVersion},
      {"target", data.target},
      {"target_index", data.target_index},
      {"feature_names", data.feature_names},
      {"lookback", data.lookback},
      {"feature_mode", feature_mode_name(data.mode)},
      {"scaler", scaler_json(data.scaler)},
      {"split",
       {{"val", range_json(s.val, s.val_first, s.val_last)},
        {"train", range_json(s.train, s.train_first, s.train_last)},
        {"test", range_json(s.test, s.test_first, s.test_last)}}},
      {"matrix", {{"values", values}, {"target", data.matrix.target}}},
      {"series", {{"dates", dates_json(data.series_dates)}, {"target", data.series_target}}},
  };
}

PreparedDataset dataset_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw CompatibilityError("unsupported dataset schema_version");
    PreparedDataset d;
    d.target = j.at("target").get<std::string>();
    d.target_index = j.at("target_index").get<std::size_t>();
    d.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    d.lookback = j.at("lookback").get<std::size_t>();
    d.mode = parse_feature_mode(j.at("feature_mode").get<std::string>());
    d.scaler = scaler_from(j.at("scaler"));
    const auto& sp = j.at("split");
    d.split.val = range_from(sp.at("val"), d.split.val_first, d.split.val_last);
    d.split.train = range_from(sp.at("train"), d.split.train_first, d.split.train_last);
    d.split.test = range_from(sp.at("test"), d.split.test_first, d.split.test_last);
    d.series_dates = dates_from(j.at("series").at("dates"));
    d.series_target = j.at("series").at("target").get<std::vector<double>>();
    const auto values = j.at("matrix").at("values").get<std::vector<double>>();
    const std::size_t rows = d.series_dates.size();
    const std::size_t f = d.feature_names.size();
    if (values.size() != rows * f) throw DataError("dataset matrix size does not match dates x features");
    d.matrix.dates = d.series_dates;
    d.matrix.feature_names = d.feature_names;
    d.matrix.values = Tensor({rows, f}, values);
    d.matrix.target = j.at("matrix").at("target").get<std::vector<double>>();
    d.windows = make_windows(d.matrix, d.split, d.lookback);
    return d;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed dataset file: ") + e.what());
  }
}

json checkpoint_json(const Forecaster& model, const PreparedDataset& data, const TrainResult& result,
                     LossKind loss, std::uint64_t seed) {
  json params = json::object();
  for (const auto& p : model.params().all()) {
    json values = json::array();
    for (double v : p.value.values()) values.push_back(v);
    params[p.name] = {{"shape", p.value.shape()}, {"data", values}};
  }
  return json{{"schema_version", kSchemaVersion},
              {"model_kind", model_kind_name(model.kind())},
              {"model_config", model_json(model)},
              {"feature_names", data.feature_names},
              {"target", data.target},
              {"target_index", data.target_index},
              {"lookback", data.lookback},
              {"scaler", scaler_json(data.scaler)},
              {"loss", loss_kind_name(loss)},
              {"params", params},
              {"train_state",
               {{"best_val_loss", result.best_val_loss},
                {"best_epoch", result.best_epoch + 1},
                {"epochs_run", result.history.size()},
                {"train_samples", result.train_samples}}},
              {"seed", seed}};
}

Checkpoint checkpoint_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw CompatibilityError("unsupported checkpoint schema_version");
    }
    Checkpoint c;
    c.model = model_from_json(parse_model_kind(j.at("model_kind").get<std::string>()), j.at("model_config"));
    c.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    c.target = j.at("target").get<std::string>();
    c.target_index = j.at("target_index").get<std::size_t>();
    c.lookback = j.at("lookback").get<std::size_t>();
    c.scaler = scaler_from(j.at("scaler"));
    c.loss = parse_loss_kind(j.at("loss").get<std::string>());
    const auto& ts = j.at("train_state");
    c.best_val_loss = ts.at("best_val_loss").get<double>();
    c.best_epoch = ts.at("best_epoch").get<int>() - 1;
    c.epochs_run = ts.at("epochs_run").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    const auto& params = j.at("params");
    auto& store = c.model->params();
    if (params.size() != store.size()) throw CompatibilityError("checkpoint parameter count mismatch");
    for (auto& p : store.all()) {
      const auto it = params.find(p.name);
      if (it == params.end()) throw CompatibilityError("checkpoint lacks parameter " + p.name);
      if (it->at("shape").get<Shape>() != p.value.shape()) {
        throw CompatibilityError("checkpoint shape mismatch for " + p.name);
      }
      const auto values = it->at("data").get<std::vector<double>>();
      if (values.size() != p.value.size()) throw CompatibilityError("checkpoint size mismatch for " + p.name);
      p.value = Tensor(p.value.shape(), values);
    }
    return c;
  } catch (const json::exception& e) {
    throw CompatibilityError(std::string("malformed checkpoint: ") + e.what());
  }
}

void check_compatible(const Checkpoint& ckpt, const PreparedDataset& data) {
  const auto& a = ckpt.feature_names;
  const auto& b = data.feature_names;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const std::string ca = i < a.size() ? a[i] : "<none>";
    const std::string cb = i < b.size() ? b[i] : "<none>";
    if (ca != cb) {
      throw CompatibilityError("feature mismatch at position " + std::to_string(i) + ": checkpoint has '" + ca +
                               "', dataset has '" + cb + "'");
    }
  }
  if (ckpt.lookback != data.lookback) throw CompatibilityError("lookback mismatch");
  if (ckpt.target_index != data.target_index) throw CompatibilityError("target index mismatch");
}

EvaluationReport evaluate_checkpoint(const Checkpoint& ckpt, const PreparedDataset& data, double tail_q) {
  check_compatible(ckpt, data);
  const ColumnScale& scale = ckpt.scaler.at(ckpt.target);
  EvaluationReport r;
  r.model = model_kind_name(ckpt.model->kind());
  r.tail_q = tail_q;
  r.best_val_loss = ckpt.best_val_loss;
  for (const auto& s : data.windows.test.samples) {
    r.dates.push_back(s.target_date);
    r.y.push_back(scale.invert(s.y));
    r.yhat.push_back(scale.invert(ckpt.model->predict(s.x)));
  }
  r.n_test = r.y.size();
  r.metrics = regression_metrics(r.y, r.yhat);
  r.high = extreme_rmse(r.y, r.yhat, Tail::High, tail_q);
  r.low = extreme_rmse(r.y, r.yhat, Tail::Low, tail_q);
  return r;
}

json report_json(const EvaluationReport& r) {
  json reasons = json::object();
  const auto maybe = [&](const char* key, const MaybeMetric& m) -> json {
    if (m.value) return *m.value;
    reasons[key] = m.reason;
    return nullptr;
  };
  json j{{"schema_version", kSchemaVersion},
         {"model", r.model},
         {"n_test", r.n_test},
         {"n_high", r.high.n},
         {"n_low", r.low.n},
         {"tail_q", r.tail_q},
         {"mse", r.metrics.mse},
         {"rmse", r.metrics.rmse},
         {"mae", r.metrics.mae},
         {"mape", r.metrics.mape},
         {"best_val_loss", r.best_val_loss}};
  j["r2"] = maybe("r2", r.metrics.r2);
  j["explained_variance"] = maybe("explained_variance", r.metrics.explained_variance);
  j["pearson_r"] = maybe("pearson_r", r.metrics.pearson_r);
  j["extreme_high_rmse"] = maybe("extreme_high_rmse", r.high.rmse);
  j["extreme_low_rmse"] = maybe("extreme_low_rmse", r.low.rmse);
  j["training_time_s"] = r.training_time_s ? json(*r.training_time_s) : json(nullptr);
  j["null_reasons"] = reasons;
  return j;
}

void write_residuals_csv(const EvaluationReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "date,y,yhat,residual\n";
  for (std::size_t i = 0; i < r.y.size(); ++i) {
    out << format_iso_date(r.dates[i]) << ',' << csv_number(r.y[i]) << ',' << csv_number(r.yhat[i]) << ','
        << csv_number(r.y[i] - r.yhat[i]) << '\n';
  }
}

void write_history_csv(const TrainResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "epoch,train_loss,val_loss,lr\n";
  for (const auto& e : result.history) {
    out << e.epoch << ',' << csv_number(e.train_loss) << ',' << csv_number(e.val_loss) << ',' << csv_number(e.lr)
        << '\n';
  }
}

void write_feature_audit_csv(const PreparedDataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "rank,feature,group,correlation,constant,selected\n";
  for (const auto& a : data.audit) {
    out << a.rank << ',' << a.name << ',' << a.group << ',' << csv_number(a.correlation) << ','
        << (a.constant ? 1 : 0) << ',' << (a.selected ? 1 : 0) << '\n';
  }
}

}  // namespace extremecast
