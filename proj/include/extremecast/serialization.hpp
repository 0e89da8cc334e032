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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "extremecast/config.hpp"
#include "extremecast/forecaster.hpp"
#include "extremecast/metrics.hpp"
#include "extremecast/prepare.hpp"
#include "extremecast/trainer.hpp"

namespace extremecast {

inline constexpr int kSchemaVersion = 1;

// Doubles as %.17g, so every value round-trips.
std::string csv_number(double v);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Untrained (zero-valued) model sized for the dataset.
std::unique_ptr<Forecaster> build_model(ModelKind kind, const RunConfig& cfg, const PreparedDataset& data);

nlohmann::json dataset_json(const PreparedDataset& data);
PreparedDataset dataset_from_json(const nlohmann::json& j);

struct Checkpoint {
  std::unique_ptr<Forecaster> model;
  std::vector<std::string> feature_names;
  std::string target;
  std::size_t target_index = 0;
  std::size_t lookback = 0;
  ScalerParams scaler;
  LossKind loss = LossKind::Extreme;
  double best_val_loss = 0.0;
  int best_epoch = -1;
  int epochs_run = 0;
  std::uint64_t seed = 0;
};

nlohmann::json checkpoint_json(const Forecaster& model, const PreparedDataset& data, const TrainResult& result,
                               LossKind loss, std::uint64_t seed);
Checkpoint checkpoint_from_json(const nlohmann::json& j);

// Throws CompatibilityError naming the first divergent feature.
void check_compatible(const Checkpoint& ckpt, const PreparedDataset& data);

struct EvaluationReport {
  std::string model;
  RegressionMetrics metrics;
  TailMetric high, low;
  double tail_q = 0.05;
  std::size_t n_test = 0;
  double best_val_loss = 0.0;
  std::optional<double> training_time_s;
  std::vector<Date> dates;
  std::vector<double> y, yhat;
};

EvaluationReport evaluate_checkpoint(const Checkpoint& ckpt, const PreparedDataset& data, double tail_q);
nlohmann::json report_json(const EvaluationReport& report);
void write_residuals_csv(const EvaluationReport& report, const std::string& path);
void write_history_csv(const TrainResult& result, const std::string& path);
void write_feature_audit_csv(const PreparedDataset& data, const std::string& path);

}  // namespace extremecast
