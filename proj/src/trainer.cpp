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

#include "extremecast/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>

#include "extremecast/errors.hpp"

namespace extremecast {

void TrainConfig::validate() const {
  if (batch_size < 2) throw ConfigError("training.batch_size", "must be >= 2");
  if (max_epochs < 1) throw ConfigError("training.max_epochs", "must be >= 1");
  if (patience < 1) throw ConfigError("training.patience", "must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw ConfigError("training.train_fraction", "must be in (0, 1]");
  }
  loss.validate();
  optim.validate();
  augment.validate();
}

void initialize_params(Forecaster& model, std::uint64_t seed) {
  Rng rng(seed, "init");
  model.params().initialize(rng);
}

WindowedDataset latest_fraction(const WindowedDataset& ds, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must be in (0, 1]");
  const auto keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ds.size()))));
  WindowedDataset out = ds;
  out.samples.assign(ds.samples.end() - static_cast<std::ptrdiff_t>(std::min(keep, ds.size())), ds.samples.end());
  return out;
}

std::vector<double> predict_all(const Forecaster& model, const WindowedDataset& ds) {
  std::vector<double> out;
  out.reserve(ds.size());
  for (const auto& s : ds.samples) out.push_back(model.predict(s.x));
  return out;
}

double evaluate_loss(const Forecaster& model, const WindowedDataset& ds, LossKind kind, const LossConfig& cfg) {
  std::vector<double> y;
  for (const auto& s : ds.samples) y.push_back(s.y);
  return compute_loss(kind, predict_all(model, ds), y, cfg).loss;
}

RegressionMetrics evaluate_raw(const Forecaster& model, const WindowedDataset& ds, const ColumnScale& target) {
  std::vector<double> y, yhat;
  for (const auto& s : ds.samples) {
    y.push_back(target.invert(s.y));
    yhat.push_back(target.invert(model.predict(s.x)));
  }
  return regression_metrics(y, yhat);
}

TrainResult train(Forecaster& model, const WindowedDataset& train_set, const WindowedDataset& val_set,
                  const TrainConfig& cfg, LossKind loss, std::uint64_t seed) {
  cfg.validate();
  if (train_set.samples.empty() || val_set.samples.empty()) {
    throw DataError("training needs non-empty train and validation partitions");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  TrainResult result;
  WindowedDataset data = cfg.train_fraction < 1.0 ? latest_fraction(train_set, cfg.train_fraction) : train_set;
  if (cfg.augment.enabled) data = augment_dataset(data, cfg.augment, Rng(seed, "augment"));
  result.train_samples = data.size();

  if (!model.trainable()) {
    result.best_val_loss = evaluate_loss(model, val_set, loss, cfg.loss);
    result.best_epoch = -1;
    return result;
  }

  AdamW optimizer(model.params(), cfg.optim);
  Rng shuffle(seed, "shuffle");
  Rng dropout(seed, "dropout");
  ParamStore best = model.params();
  result.best_val_loss = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  std::vector<std::size_t> order(data.size());
  std::vector<std::unique_ptr<ForwardCache>> caches;
  std::vector<double> pred, target;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const double lr = cosine_warm_restart_lr(epoch, cfg.optim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle.below(i)]);
    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    std::size_t batch_index = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size, ++batch_index) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      if (end - begin < 2) break;
      caches.resize(end - begin);
      pred.clear();
      target.clear();
      for (std::size_t i = begin; i < end; ++i) {
        const Sample& s = data.samples[order[i]];
        pred.push_back(model.forward(s.x, Mode::Train, &dropout, &caches[i - begin]));
        target.push_back(s.y);
      }
      const LossResult lr_batch = compute_loss(loss, pred, target, cfg.loss);
      if (!std::isfinite(lr_batch.loss)) {
        throw NumericError("non-finite training loss at epoch " + std::to_string(epoch + 1) + " batch " +
                           std::to_string(batch_index + 1));
      }
      model.params().zero_grad();
      for (std::size_t i = 0; i < caches.size(); ++i) model.backward(*caches[i], lr_batch.grad[i]);
      clip_gradients(model.params(), cfg.optim.clip_norm);
      optimizer.step(model.params(), lr);
      loss_sum += lr_batch.loss * static_cast<double>(end - begin);
      loss_count += end - begin;
    }
    const double val_loss = evaluate_loss(model, val_set, loss, cfg.loss);
    if (!std::isfinite(val_loss)) {
      throw NumericError("non-finite validation loss at epoch " + std::to_string(epoch + 1));
    }
    result.history.push_back(
        EpochRecord{epoch + 1, loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0, val_loss, lr});
    if (val_loss < result.best_val_loss) {
      result.best_val_loss = val_loss;
      result.best_epoch = epoch;
      best.copy_values_from(model.params());
      since_improvement = 0;
      result.wall_clock_to_best = std::chrono::duration<double>(Clock::now() - start).count();
    } else if (++since_improvement >= cfg.patience) {
      break;
    }
  }
  model.params().copy_values_from(best);
  model.params().zero_grad();
  result.wall_clock_total = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

std::vector<CurveRow> learning_curve(const PreparedDataset& data, const ModelFactory& factory,
                                     const std::vector<double>& fractions, const TrainConfig& cfg,
                                     LossKind loss, std::uint64_t seed) {
  std::vector<CurveRow> rows;
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("fractions", "each fraction must be in (0, 1]");
    CurveRow row;
    row.fraction = f;
    const WindowedDataset subset = latest_fraction(data.windows.train, f);
    row.train_samples = subset.size();
    if (subset.size() < 2 * cfg.batch_size) {
      row.skipped = true;
      row.reason = "fewer than 2 batches of training samples";
      rows.push_back(row);
      continue;
    }
    auto model = factory(data);
    initialize_params(*model, seed);
    TrainConfig c = cfg;
    c.train_fraction = 1.0;
    train(*model, subset, data.windows.val, c, loss, seed);
    row.metrics = evaluate_raw(*model, data.windows.test, data.target_scale());
    rows.push_back(row);
  }
  return rows;
}

std::vector<AblationRow> feature_ablation(const std::vector<PreparedDataset>& datasets,
                                          const ModelFactory& factory, const TrainConfig& cfg,
                                          LossKind loss, std::uint64_t seed) {
  std::vector<AblationRow> rows;
  for (const auto& data : datasets) {
    auto model = factory(data);
    initialize_params(*model, seed);
    train(*model, data.windows.train, data.windows.val, cfg, loss, seed);
    rows.push_back(AblationRow{feature_mode_name(data.mode), data.feature_names.size(),
                               evaluate_raw(*model, data.windows.test, data.target_scale())});
  }
  return rows;
}

}  // namespace extremecast
