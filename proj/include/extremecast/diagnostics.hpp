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
#include <string>
#include <vector>

#include "extremecast/data_pipeline.hpp"
#include "extremecast/forecaster.hpp"

namespace extremecast {

struct FeatureImportance {
  std::string feature;
  double delta_rmse = 0.0;  // occlusion: occluded - baseline; permutation: mean drop
  double std = 0.0;         // permutation only
  std::size_t repeats = 0;
};

struct ImportanceResult {
  double baseline_rmse = 0.0;
  std::vector<FeatureImportance> features;  // dataset feature order
};

// Replaces one feature at every timestep of every window with its test-set
// median and reports the RMSE change in raw units.
ImportanceResult occlusion_sensitivity(const Forecaster& model, const WindowedDataset& test,
                                       const ColumnScale& target);

// Shuffles one feature across samples (whole window columns move together)
// and reports the mean RMSE increase over `repeats`. Feature f draws from
// Rng(seed, "permutation").substream(f).
ImportanceResult permutation_importance(const Forecaster& model, const WindowedDataset& test,
                                        const ColumnScale& target, std::size_t repeats, std::uint64_t seed);

// Features ordered by decreasing importance.
std::vector<std::string> importance_ranking(const ImportanceResult& result);
// Spearman rank correlation of two importance lists over the same features.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

struct PdpCurve {
  std::string feature;
  std::vector<double> grid;       // model-input units
  std::vector<double> mean_pred;  // raw target units
  std::string warning;
};

// Sweeps the feature over `grid_size` evenly spaced values between its 1st
// and 99th test-set percentile, setting it at every timestep of every window.
PdpCurve partial_dependence(const Forecaster& model, const WindowedDataset& test, std::size_t feature,
                            const ColumnScale& target, std::size_t grid_size = 20);

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<std::size_t> counts;
};

// Freedman-Diaconis bin width 2 IQR n^(-1/3).
Histogram freedman_diaconis_histogram(const std::vector<double>& values);
std::vector<double> autocorrelation(const std::vector<double>& values, std::size_t max_lag);
// Standard normal quantile function.
double normal_quantile(double p);

struct ResidualDiagnostics {
  std::vector<double> acf;  // lags 1..max_lag
  double band = 0.0;        // 1.96 / sqrt(n)
  Histogram histogram;
  std::vector<std::pair<double, double>> qq;  // (theoretical, standardized empirical)
  std::vector<std::pair<double, double>> residual_vs_pred;
};

ResidualDiagnostics residual_diagnostics(const std::vector<double>& residuals,
                                         const std::vector<double>& predicted, std::size_t max_lag = 30);

struct KMeansResult {
  std::vector<std::size_t> assignment;
  Tensor centroids;  // [k x d]
  std::vector<double> inertia;  // within-cluster SS after each Lloyd iteration
  std::size_t iterations = 0;
};

// k-means++ seeding from Rng(seed, "kmeans"), Lloyd iterations until the
// assignment stops changing or 300 iterations. Empty clusters are reseeded at
// the point farthest from its centroid.
KMeansResult kmeans(const Tensor& points, std::size_t k, std::uint64_t seed, std::size_t max_iter = 300);

// Clusters days on z-scored (year, month, target); centroids in original units.
KMeansResult kmeans_regimes(const std::vector<Date>& dates, const std::vector<double>& target, std::size_t k,
                            std::uint64_t seed);

}  // namespace extremecast
