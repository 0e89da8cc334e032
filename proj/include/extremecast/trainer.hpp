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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "extremecast/augment.hpp"
#include "extremecast/forecaster.hpp"
#include "extremecast/loss.hpp"
#include "extremecast/metrics.hpp"
#include "extremecast/optim.hpp"
#include "extremecast/prepare.hpp"

namespace extremecast {

struct TrainConfig {
  std::size_t batch_size = 64;
  int max_epochs = 300;
  int patience = 25;
  double train_fraction = 1.0;
  LossConfig loss;
  OptimConfig optim;
  AugmentConfig augment;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double lr = 0.0;
};

struct TrainResult {
  std::vector<EpochRecord> history;
  double best_val_loss = 0.0;
  int best_epoch = 0;  // 0-based index into history, -1 when nothing was trained
  std::size_t train_samples = 0;
  double wall_clock_to_best = 0.0;
  double wall_clock_total = 0.0;
};

// Re-draws every parameter from the "init" stream of `seed`.
void initialize_params(Forecaster& model, std::uint64_t seed);

// Latest `fraction` of a dataset (at least one sample).
WindowedDataset latest_fraction(const WindowedDataset& ds, double fraction);

double evaluate_loss(const Forecaster& model, const WindowedDataset& ds, LossKind kind, const LossConfig& cfg);

// Mini-batch training with shuffling, clipping, AdamW, a per-epoch cosine
// schedule and early stopping on validation loss; the best parameters are
// restored before returning. Models without parameters only get a
// validation pass.
TrainResult train(Forecaster& model, const WindowedDataset& train_set, const WindowedDataset& val_set,
                  const TrainConfig& cfg, LossKind loss, std::uint64_t seed);

std::vector<double> predict_all(const Forecaster& model, const WindowedDataset& ds);
// Metrics in raw units after inverting the target scale.
RegressionMetrics evaluate_raw(const Forecaster& model, const WindowedDataset& ds, const ColumnScale& target);

using ModelFactory = std::function<std::unique_ptr<Forecaster>(const PreparedDataset&)>;

struct CurveRow {
  double fraction = 0.0;
  std::size_t train_samples = 0;
  bool skipped = false;
  std::string reason;
  RegressionMetrics metrics;
};

std::vector<CurveRow> learning_curve(const PreparedDataset& data, const ModelFactory& factory,
                                     const std::vector<double>& fractions, const TrainConfig& cfg,
                                     LossKind loss, std::uint64_t seed);

struct AblationRow {
  std::string mode;
  std::size_t feature_count = 0;
  RegressionMetrics metrics;
};

// One prepared dataset per feature mode, trained with identical seeds.
std::vector<AblationRow> feature_ablation(const std::vector<PreparedDataset>& datasets,
                                          const ModelFactory& factory, const TrainConfig& cfg,
                                          LossKind loss, std::uint64_t seed);

}  // namespace extremecast
