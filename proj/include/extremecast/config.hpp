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
#include <optional>
#include <string>

#include "json.hpp"

#include "extremecast/baselines.hpp"
#include "extremecast/mmwstm_adran.hpp"
#include "extremecast/prepare.hpp"
#include "extremecast/trainer.hpp"

namespace extremecast {

struct RunConfig {
  std::optional<std::uint64_t> seed;
  DatasetConfig dataset;
  FeatureSpec features;
  ModelConfig model;
  TcnConfig tcn;
  NBeatsConfig nbeats;
  TrainConfig training;
  LossKind loss_kind = LossKind::Extreme;
  LossKind baseline_loss_kind = LossKind::Huber;
  double tail_q = 0.05;

  void validate() const;
};

// Parses and validates a run configuration. Missing fields take defaults;
// unknown keys and wrong types raise ConfigError with the field path.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

nlohmann::json model_config_json(const ModelConfig& cfg);
ModelConfig parse_model_config(const nlohmann::json& j, const std::string& path = "model");
nlohmann::json tcn_config_json(const TcnConfig& cfg);
TcnConfig parse_tcn_config(const nlohmann::json& j, const std::string& path = "baselines.tcn");
nlohmann::json nbeats_config_json(const NBeatsConfig& cfg);
NBeatsConfig parse_nbeats_config(const nlohmann::json& j, const std::string& path = "baselines.nbeats");

// Seed precedence: explicit flag, config, EXTREMECAST_SEED, then 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& cfg);

}  // namespace extremecast
