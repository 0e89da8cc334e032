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

#include "extremecast/diagnostics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "extremecast/errors.hpp"
#include "extremecast/metrics.hpp"
#include "extremecast/quantile.hpp"
#include "extremecast/rng.hpp"

namespace extremecast {

namespace {

double raw_rmse(const Forecaster& model, const std::vector<Sample>& samples, const ColumnScale& target) {
  std::vector<double> y, yhat;
  y.reserve(samples.size());
  yhat.reserve(samples.size());
  for (const auto& s : samples) {
    y.push_back(target.invert(s.y));
    yhat.push_back(target.invert(model.predict(s.x)));
  }
  return rmse(y, yhat);
}

void require_samples(const WindowedDataset& ds) {
  if (ds.samples.empty()) throw DataError("diagnostics need a non-empty test set");
}

std::vector<double> feature_values(const WindowedDataset& ds, std::size_t f) {
  std::vector<double> v;
  for (const auto& s : ds.samples) {
    for (std::size_t t = 0; t < s.x.rows(); ++t) v.push_back(s.x.at(t, f));
  }
  return v;
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t m = i; m <= j; ++m) r[idx[m]] = avg;
    i = j + 1;
  }
  return r;
}

double squared_distance(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

}  // namespace

ImportanceResult occlusion_sensitivity(const Forecaster& model, const WindowedDataset& test,
                                       const ColumnScale& target) {
  require_samples(test);
  ImportanceResult out;
  out.baseline_rmse = raw_rmse(model, test.samples, target);
  for (std::size_t f = 0; f < test.feature_count(); ++f) {
    const double med = median(feature_values(test, f));
    std::vector<Sample> occluded = test.samples;
    for (auto& s : occluded) {
      for (std::size_t t = 0; t < s.x.rows(); ++t) s.x.at(t, f) = med;
    }
    out.features.push_back({test.feature_names[f], raw_rmse(model, occluded, target) - out.baseline_rmse, 0.0, 1});
  }
  return out;
}

ImportanceResult permutation_importance(const Forecaster& model, const WindowedDataset& test,
                                        const ColumnScale& target, std::size_t repeats, std::uint64_t seed) {
  require_samples(test);
  if (repeats == 0) throw std::invalid_argument("permutation repeats must be >= 1");
  ImportanceResult out;
  out.baseline_rmse = raw_rmse(model, test.samples, target);
  const Rng family(seed, "permutation");
  const std::size_t n = test.size();
  for (std::size_t f = 0; f < test.feature_count(); ++f) {
    Rng rng = family.substream(f);
    std::vector<double> drops;
    for (std::size_t r = 0; r < repeats; ++r) {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      std::vector<Sample> shuffled = test.samples;
      for (std::size_t i = 0; i < n; ++i) {
        const Tensor& src = test.samples[perm[i]].x;
        for (std::size_t t = 0; t < src.rows(); ++t) shuffled[i].x.at(t, f) = src.at(t, f);
      }
      drops.push_back(raw_rmse(model, shuffled, target) - out.baseline_rmse);
    }
    out.features.push_back({test.feature_names[f], mean(drops), sample_std(drops), repeats});
  }
  return out;
}

std::vector<std::string> importance_ranking(const ImportanceResult& result) {
  std::vector<FeatureImportance> sorted = result.features;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.delta_rmse > b.delta_rmse; });
  std::vector<std::string> names;
  for (const auto& f : sorted) names.push_back(f.feature);
  return names;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("spearman needs two equal lists of >= 2");
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double ma = mean(ra), mb = mean(rb);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

PdpCurve partial_dependence(const Forecaster& model, const WindowedDataset& test, std::size_t feature,
                            const ColumnScale& target, std::size_t grid_size) {
  require_samples(test);
  if (feature >= test.feature_count()) throw std::invalid_argument("unknown PDP feature index");
  if (grid_size < 2) throw std::invalid_argument("PDP grid needs at least 2 points");
  PdpCurve curve;
  curve.feature = test.feature_names[feature];
  const auto values = feature_values(test, feature);
  const double lo = quantile(values, 0.01);
  const double hi = quantile(values, 0.99);
  if (lo == hi) {
    curve.grid = {lo};
    curve.warning = "constant feature";
  } else {
    for (std::size_t i = 0; i < grid_size; ++i) {
      curve.grid.push_back(i + 1 == grid_size ? hi
                                              : lo + (hi - lo) * static_cast<double>(i) /
                                                         static_cast<double>(grid_size - 1));
    }
  }
  std::vector<Sample> work = test.samples;
  for (double g : curve.grid) {
    double sum = 0.0;
    for (auto& s : work) {
      for (std::size_t t = 0; t < s.x.rows(); ++t) s.x.at(t, feature) = g;
      sum += target.invert(model.predict(s.x));
    }
    curve.mean_pred.push_back(sum / static_cast<double>(work.size()));
  }
  return curve;
}

Histogram freedman_diaconis_histogram(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("histogram needs values");
  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  const double mn = *mn_it, mx = *mx_it;
  const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
  const double width = 2.0 * iqr * std::pow(static_cast<double>(values.size()), -1.0 / 3.0);
  std::size_t bins = 1;
  if (width > 0.0 && mx > mn) bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((mx - mn) / width)), 1, 10000);
  Histogram h;
  const double span = mx > mn ? mx - mn : 1.0;
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges.push_back(i == bins ? mn + span : mn + span * static_cast<double>(i) / static_cast<double>(bins));
  }
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - mn) / span * static_cast<double>(bins));
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

std::vector<double> autocorrelation(const std::vector<double>& values, std::size_t max_lag) {
  const std::size_t n = values.size();
  const double m = mean(values);
  double denom = 0.0;
  for (double v : values) denom += (v - m) * (v - m);
  std::vector<double> acf;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = k; t < n; ++t) num += (values[t] - m) * (values[t - k] - m);
    acf.push_back(denom == 0.0 ? 0.0 : num / denom);
  }
  return acf;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal quantile needs p in (0, 1)");
  // Acklam's rational approximation, refined by one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                             1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01, -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

ResidualDiagnostics residual_diagnostics(const std::vector<double>& residuals,
                                         const std::vector<double>& predicted, std::size_t max_lag) {
  if (residuals.size() != predicted.size()) throw std::invalid_argument("residual/prediction length mismatch");
  if (residuals.size() < 2) throw DataError("residual diagnostics need at least 2 residuals");
  const std::size_t n = residuals.size();
  ResidualDiagnostics out;
  out.acf = autocorrelation(residuals, max_lag);
  out.band = 1.96 / std::sqrt(static_cast<double>(n));
  out.histogram = freedman_diaconis_histogram(residuals);
  const double m = mean(residuals);
  double sd = sample_std(residuals);
  if (sd == 0.0) sd = 1.0;
  std::vector<double> z;
  for (double r : residuals) z.push_back((r - m) / sd);
  std::sort(z.begin(), z.end());
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.qq.emplace_back(normal_quantile(p), z[i]);
  }
  for (std::size_t i = 0; i < n; ++i) out.residual_vs_pred.emplace_back(predicted[i], residuals[i]);
  return out;
}

KMeansResult kmeans(const Tensor& points, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (n < k) throw DataError("k-means needs at least k points");
  Rng rng(seed, "kmeans");
  KMeansResult out;
  out.centroids = Tensor::matrix(k, d);
  std::size_t first = rng.below(n);
  std::copy_n(points.row(first), d, out.centroids.row(0));
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], squared_distance(points.row(i), out.centroids.row(c - 1), d));
      total += dist[i];
    }
    std::size_t pick = n - 1;
    if (total == 0.0) {
      pick = rng.below(n);
    } else {
      const double target = rng.uniform01() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    }
    std::copy_n(points.row(pick), d, out.centroids.row(c));
  }

  out.assignment.assign(n, k);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(points.row(i), out.centroids.row(0), d);
      for (std::size_t c = 1; c < k; ++c) {
        const double dc = squared_distance(points.row(i), out.centroids.row(c), d);
        if (dc < best_d) {
          best_d = dc;
          best = c;
        }
      }
      if (out.assignment[i] != best) {
        out.assignment[i] = best;
        changed = true;
      }
    }
    ++out.iterations;
    if (!changed && iter > 0) {
      break;
    }
    Tensor sums = Tensor::matrix(k, d);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[out.assignment[i]];
      for (std::size_t j = 0; j < d; ++j) sums.at(out.assignment[i], j) += points.at(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double di = squared_distance(points.row(i), out.centroids.row(out.assignment[i]), d);
          if (di > far_d) {
            far_d = di;
            far = i;
          }
        }
        std::copy_n(points.row(far), d, out.centroids.row(c));
        continue;
      }
      for (std::size_t j = 0; j < d; ++j) out.centroids.at(c, j) = sums.at(c, j) / static_cast<double>(counts[c]);
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      inertia += squared_distance(points.row(i), out.centroids.row(out.assignment[i]), d);
    }
    out.inertia.push_back(inertia);
  }
  return out;
}

KMeansResult kmeans_regimes(const std::vector<Date>& dates, const std::vector<double>& target, std::size_t k,
                            std::uint64_t seed) {
  if (dates.size() != target.size()) throw std::invalid_argument("dates/target length mismatch");
  const std::size_t n = dates.size();
  Tensor raw = Tensor::matrix(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const std::chrono::year_month_day ymd{dates[i]};
    raw.at(i, 0) = static_cast<double>(static_cast<int>(ymd.year()));
    raw.at(i, 1) = static_cast<double>(static_cast<unsigned>(ymd.month()));
    raw.at(i, 2) = target[i];
  }
  std::vector<double> mu(3), sd(3);
  Tensor z = raw;
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = raw.at(i, j);
    mu[j] = mean(col);
    sd[j] = sample_std(col);
    if (sd[j] == 0.0) sd[j] = 1.0;
    for (std::size_t i = 0; i < n; ++i) z.at(i, j) = (raw.at(i, j) - mu[j]) / sd[j];
  }
  KMeansResult out = kmeans(z, k, seed);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < 3; ++j) out.centroids.at(c, j) = out.centroids.at(c, j) * sd[j] + mu[j];
  }
  return out;
}

}  // namespace extremecast
