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

#include "extremecast/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "extremecast/errors.hpp"

namespace extremecast {

using nlohmann::json;

namespace {

// Reads one JSON object, checking types and rejecting keys never read.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
  }
  ~ObjectReader() = default;

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    known_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "must be a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "must be an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = static_cast<Int>(v->get<std::uint64_t>());
        } else {
          const auto s = v->get<std::int64_t>();
          if (s < 0) throw ConfigError(field(key), "must be >= 0");
          out = static_cast<Int>(s);
        }
      } else {
        out = static_cast<Int>(v->get<std::int64_t>());
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key), "must be a boolean");
      out = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "must be a string");
      out = v->get<std::string>();
    }
  }

  void size_list(const std::string& key, std::vector<std::size_t>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(field(key), "must be an array");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
          throw ConfigError(field(key), "entries must be non-negative integers");
        }
        out.push_back(e.get<std::size_t>());
      }
    }
  }

  void string_list(const std::string& key, std::vector<std::string>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(field(key), "must be an array");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_string()) throw ConfigError(field(key), "entries must be strings");
        out.push_back(e.get<std::string>());
      }
    }
  }

  // Call after all fields are read.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!known_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> known_;
};

void parse_loss(const json& j, RunConfig& cfg) {
  ObjectReader r(j, "training.loss");
  std::string kind = loss_kind_name(cfg.loss_kind);
  r.string("kind", kind);
  cfg.loss_kind = parse_loss_kind(kind);
  std::string baseline = loss_kind_name(cfg.baseline_loss_kind);
  r.string("baseline_kind", baseline);
  try {
    cfg.baseline_loss_kind = parse_loss_kind(baseline);
  } catch (const ConfigError& e) {
    throw ConfigError("training.loss.baseline_kind", e.what());
  }
  auto& l = cfg.training.loss;
  r.number("alpha_high", l.alpha_high);
  r.number("alpha_low", l.alpha_low);
  r.number("beta", l.beta);
  r.number("q_high", l.q_high);
  r.number("q_low", l.q_low);
  r.finish();
}

void parse_optim(const json& j, OptimConfig& o) {
  ObjectReader r(j, "training.optim");
  r.number("lr_max", o.lr_max);
  r.number("lr_min", o.lr_min);
  r.number("weight_decay", o.weight_decay);
  r.number("beta1", o.beta1);
  r.number("beta2", o.beta2);
  r.number("eps", o.eps);
  r.integer("t0", o.t0);
  r.integer("t_mult", o.t_mult);
  r.number("clip_norm", o.clip_norm);
  r.finish();
}

}  // namespace

void RunConfig::validate() const {
  dataset.validate();
  features.validate();
  ModelConfig m = model;
  if (m.input_dim == 0) m.input_dim = 1;
  m.validate();
  TcnConfig t = tcn;
  if (t.input_dim == 0) t.input_dim = 1;
  t.validate();
  nbeats.validate();
  training.validate();
  if (!(tail_q > 0.0 && tail_q < 0.5)) throw ConfigError("eval.tail_q", "must be in (0, 0.5)");
}

ModelConfig parse_model_config(const json& j, const std::string& path) {
  ModelConfig m;
  ObjectReader r(j, path);
  r.integer("input_dim", m.input_dim);
  r.integer("embed_dim", m.embed_dim);
  r.integer("lstm_hidden", m.lstm_hidden);
  r.integer("lstm_layers", m.lstm_layers);
  r.integer("gru_hidden", m.gru_hidden);
  r.integer("gru_layers", m.gru_layers);
  r.integer("n_states", m.n_states);
  r.integer("n_heads", m.n_heads);
  r.integer("stream_dim", m.stream_dim);
  r.number("dropout_rate", m.dropout_rate);
  r.number("amp_gain", m.amp_gain);
  r.integer("lookback", m.lookback);
  r.finish();
  return m;
}

json model_config_json(const ModelConfig& m) {
  return json{{"input_dim", m.input_dim},     {"embed_dim", m.embed_dim},   {"lstm_hidden", m.lstm_hidden},
              {"lstm_layers", m.lstm_layers}, {"gru_hidden", m.gru_hidden}, {"gru_layers", m.gru_layers},
              {"n_states", m.n_states},       {"n_heads", m.n_heads},       {"stream_dim", m.stream_dim},
              {"dropout_rate", m.dropout_rate}, {"amp_gain", m.amp_gain},   {"lookback", m.lookback}};
}

TcnConfig parse_tcn_config(const json& j, const std::string& path) {
  TcnConfig t;
  ObjectReader r(j, path);
  r.size_list("filters", t.filters);
  r.size_list("dilations", t.dilations);
  r.integer("kernel", t.kernel);
  r.number("dropout", t.dropout_rate);
  r.integer("input_dim", t.input_dim);
  r.finish();
  return t;
}

json tcn_config_json(const TcnConfig& t) {
  return json{{"filters", t.filters}, {"dilations", t.dilations}, {"kernel", t.kernel},
              {"dropout", t.dropout_rate}, {"input_dim", t.input_dim}};
}

NBeatsConfig parse_nbeats_config(const json& j, const std::string& path) {
  NBeatsConfig n;
  ObjectReader r(j, path);
  r.integer("stacks", n.stacks);
  r.integer("fc_layers", n.fc_layers);
  r.integer("units", n.units);
  r.integer("lookback", n.lookback);
  r.integer("target_index", n.target_index);
  r.finish();
  return n;
}

json nbeats_config_json(const NBeatsConfig& n) {
  return json{{"stacks", n.stacks}, {"fc_layers", n.fc_layers}, {"units", n.units},
              {"lookback", n.lookback}, {"target_index", n.target_index}};
}

RunConfig parse_run_config(const json& j) {
  RunConfig cfg;
  ObjectReader root(j, "");
  if (const json* v = root.find("seed")) {
    if (!v->is_number_unsigned()) throw ConfigError("seed", "must be a non-negative integer");
    cfg.seed = v->get<std::uint64_t>();
  }
  if (const json* v = root.find("dataset")) {
    ObjectReader r(*v, "dataset");
    r.string("csv_path", cfg.dataset.csv_path);
    if (const json* lb = r.find("lookback")) {
      if (!lb->is_number_integer() || lb->get<std::int64_t>() < 1) {
        throw ConfigError("dataset.lookback", "must be an integer >= 1");
      }
      cfg.dataset.lookback = lb->get<std::size_t>();
    }
    r.number("train_fraction", cfg.dataset.train_fraction);
    r.number("val_fraction", cfg.dataset.val_fraction);
    r.finish();
  }
  if (const json* v = root.find("features")) {
    ObjectReader r(*v, "features");
    auto& f = cfg.features;
    std::string mode = feature_mode_name(f.mode);
    r.string("mode", mode);
    try {
      f.mode = parse_feature_mode(mode);
    } catch (const std::exception& e) {
      throw ConfigError("features.mode", e.what());
    }
    r.integer("top_k", f.top_k);
    r.size_list("rolling_windows", f.rolling_windows);
    r.integer("sg_window", f.sg_window);
    r.integer("sg_poly", f.sg_poly);
    r.number("zscore_flag_threshold", f.zscore_flag_threshold);
    std::vector<std::string> groups(f.enabled_groups.begin(), f.enabled_groups.end());
    r.string_list("enabled_groups", groups);
    f.enabled_groups = {groups.begin(), groups.end()};
    r.string_list("key_columns", f.key_columns);
    r.string_list("smooth_columns", f.smooth_columns);
    r.number("heat_index_humidity_coef", f.heat_index_humidity_coef);
    r.number("drought_precip_coef", f.drought_precip_coef);
    r.finish();
  }
  if (const json* v = root.find("augment")) {
    ObjectReader r(*v, "augment");
    auto& a = cfg.training.augment;
    r.boolean("enabled", a.enabled);
    r.number("jitter_sigma", a.jitter_sigma);
    r.number("scale_lo", a.scale_lo);
    r.number("scale_hi", a.scale_hi);
    r.integer("warp_knots", a.warp_knots);
    r.number("warp_sigma", a.warp_sigma);
    r.finish();
  }
  if (const json* v = root.find("model")) cfg.model = parse_model_config(*v);
  if (const json* v = root.find("baselines")) {
    ObjectReader r(*v, "baselines");
    if (const json* t = r.find("tcn")) cfg.tcn = parse_tcn_config(*t);
    if (const json* n = r.find("nbeats")) cfg.nbeats = parse_nbeats_config(*n);
    r.finish();
  }
  if (const json* v = root.find("training")) {
    ObjectReader r(*v, "training");
    auto& t = cfg.training;
    r.integer("batch_size", t.batch_size);
    r.integer("max_epochs", t.max_epochs);
    r.integer("patience", t.patience);
    r.number("train_fraction", t.train_fraction);
    if (const json* l = r.find("loss")) parse_loss(*l, cfg);
    if (const json* o = r.find("optim")) parse_optim(*o, t.optim);
    r.finish();
  }
  if (const json* v = root.find("eval")) {
    ObjectReader r(*v, "eval");
    r.number("tail_q", cfg.tail_q);
    r.finish();
  }
  root.finish();
  cfg.model.lookback = cfg.dataset.lookback;
  cfg.nbeats.lookback = cfg.dataset.lookback;
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& cfg) {
  json j;
  if (cfg.seed) j["seed"] = *cfg.seed;
  j["dataset"] = {{"csv_path", cfg.dataset.csv_path},
                  {"lookback", cfg.dataset.lookback},
                  {"train_fraction", cfg.dataset.train_fraction},
                  {"val_fraction", cfg.dataset.val_fraction}};
  const auto& f = cfg.features;
  j["features"] = {{"mode", feature_mode_name(f.mode)},
                   {"top_k", f.top_k},
                   {"rolling_windows", f.rolling_windows},
                   {"sg_window", f.sg_window},
                   {"sg_poly", f.sg_poly},
                   {"zscore_flag_threshold", f.zscore_flag_threshold},
                   {"enabled_groups", std::vector<std::string>(f.enabled_groups.begin(), f.enabled_groups.end())},
                   {"key_columns", f.key_columns},
                   {"smooth_columns", f.smooth_columns},
                   {"heat_index_humidity_coef", f.heat_index_humidity_coef},
                   {"drought_precip_coef", f.drought_precip_coef}};
  const auto& a = cfg.training.augment;
  j["augment"] = {{"enabled", a.enabled},       {"jitter_sigma", a.jitter_sigma}, {"scale_lo", a.scale_lo},
                  {"scale_hi", a.scale_hi},     {"warp_knots", a.warp_knots},     {"warp_sigma", a.warp_sigma}};
  j["model"] = model_config_json(cfg.model);
  j["baselines"] = {{"tcn", tcn_config_json(cfg.tcn)}, {"nbeats", nbeats_config_json(cfg.nbeats)}};
  const auto& t = cfg.training;
  const auto& o = t.optim;
  j["training"] = {{"batch_size", t.batch_size},
                   {"max_epochs", t.max_epochs},
                   {"patience", t.patience},
                   {"train_fraction", t.train_fraction},
                   {"loss",
                    {{"kind", loss_kind_name(cfg.loss_kind)},
                     {"baseline_kind", loss_kind_name(cfg.baseline_loss_kind)},
                     {"alpha_high", t.loss.alpha_high},
                     {"alpha_low", t.loss.alpha_low},
                     {"beta", t.loss.beta},
                     {"q_high", t.loss.q_high},
                     {"q_low", t.loss.q_low}}},
                   {"optim",
                    {{"lr_max", o.lr_max},
                     {"lr_min", o.lr_min},
                     {"weight_decay", o.weight_decay},
                     {"beta1", o.beta1},
                     {"beta2", o.beta2},
                     {"eps", o.eps},
                     {"t0", o.t0},
                     {"t_mult", o.t_mult},
                     {"clip_norm", o.clip_norm}}}};
  j["eval"] = {{"tail_q", cfg.tail_q}};
  return j;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& cfg) {
  if (flag) return *flag;
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("EXTREMECAST_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("EXTREMECAST_SEED", "must be a non-negative integer");
    }
  }
  return 0;
}

}  // namespace extremecast
