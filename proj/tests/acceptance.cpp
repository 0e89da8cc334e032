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

// Acceptance checks: one PASS/FAIL/SKIP line per criterion.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "extremecast/augment.hpp"
#include "extremecast/baselines.hpp"
#include "extremecast/config.hpp"
#include "extremecast/diagnostics.hpp"
#include "extremecast/errors.hpp"
#include "extremecast/grad_check.hpp"
#include "extremecast/loss.hpp"
#include "extremecast/metrics.hpp"
#include "extremecast/mmwstm_adran.hpp"
#include "extremecast/prepare.hpp"
#include "extremecast/savitzky_golay.hpp"
#include "extremecast/serialization.hpp"
#include "extremecast/synthetic.hpp"
#include "extremecast/table.hpp"
#include "extremecast/trainer.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace extremecast;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum Status { Pass, Fail, Skip } status = Fail;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Outcome::Pass : Outcome::Fail, std::move(detail)}; }

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void randomize(ParamStore& store, std::uint64_t seed, double scale) {
  Rng rng(seed, "params");
  for (auto& p : store.all()) {
    for (double& v : p.value.values()) v = rng.gaussian(0.0, scale);
  }
}

struct Options {
  fs::path workdir;
  std::string cli;
  fs::path data_dir;
};

// 1. Gradient correctness.
Outcome gradients(const Options&) {
  std::vector<Tensor> xs;
  std::vector<double> ys;
  for (std::uint64_t i = 0; i < 4; ++i) {
    xs.push_back(fixtures::random_matrix(8, 6, 100 + i));
    ys.push_back(0.5 * static_cast<double>(i) - 0.7);
  }
  std::ostringstream detail;
  bool ok = true;
  auto check = [&](const std::string& name, Forecaster& model) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = fixtures::model_grad_check(model, xs, ys, LossKind::Extreme);
    const double secs = seconds_since(t0);
    ok = ok && r.checked == model.params().scalar_count() && r.max_rel_error <= 1e-4 && secs < 60.0;
    detail << name << " max_rel " << fmt(r.max_rel_error, 3) << " over " << r.checked << " in " << fmt(secs, 3)
           << "s; ";
  };
  MmwstmAdran mm(fixtures::tiny_model());
  randomize(mm.params(), 20, 0.5);
  check("mmwstm", mm);
  TcnConfig tc;
  tc.input_dim = 6;
  tc.filters = {4, 6, 6};
  tc.dilations = {1, 2, 4};
  tc.kernel = 3;
  Tcn tcn(tc);
  randomize(tcn.params(), 5, 0.5);
  check("tcn", tcn);
  NBeatsConfig nc;
  nc.stacks = 3;
  nc.fc_layers = 2;
  nc.units = 5;
  nc.lookback = 8;
  nc.target_index = 2;
  NBeats nb(nc);
  randomize(nb.params(), 6, 0.5);
  check("nbeats", nb);
  return verdict(ok, detail.str());
}

// 2. Loss oracle equivalence.
Outcome loss_oracle(const Options&) {
  Rng rng(2, "loss-oracle");
  double worst = 0.0, worst_mse = 0.0;
  for (int b = 0; b < 1000; ++b) {
    const auto n = static_cast<std::size_t>(2 + rng.below(199));
    std::vector<double> pred(n), target(n);
    for (std::size_t i = 0; i < n; ++i) {
      target[i] = rng.gaussian(0, 3);
      pred[i] = target[i] + rng.gaussian(0, 1);
    }
    LossConfig cfg;
    cfg.alpha_high = rng.uniform(0.5, 4);
    cfg.alpha_low = rng.uniform(0.5, 4);
    cfg.beta = rng.uniform(0.1, 1);
    const double got = extreme_weather_loss(pred, target, cfg).loss;
    const double want = oracle::extreme_loss(pred, target, cfg.alpha_high, cfg.alpha_low, cfg.beta);
    worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    cfg.alpha_high = cfg.alpha_low = cfg.beta;
    double mse = 0.0;
    for (std::size_t i = 0; i < n; ++i) mse += (pred[i] - target[i]) * (pred[i] - target[i]);
    mse = cfg.beta * mse / static_cast<double>(n);
    worst_mse = std::max(worst_mse, std::abs(extreme_weather_loss(pred, target, cfg).loss - mse) / std::max(1.0, mse));
  }
  return verdict(worst <= 1e-12 && worst_mse <= 1e-12,
                 "max oracle diff " + fmt(worst, 3) + ", max beta*MSE diff " + fmt(worst_mse, 3));
}

double simplex_error(const Tensor& t) {
  double worst = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      worst = std::max(worst, -t.at(r, j));
      s += t.at(r, j);
    }
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

// 3. Simplex invariants.
Outcome simplex(const Options&) {
  MmwstmAdran model(fixtures::tiny_model());
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    if (k % 100 == 0) randomize(model.params(), 3000 + k, 1.5);
    const auto c = model.introspect(fixtures::random_matrix(8, 6, k, 2.0, "simplex"));
    worst = std::max({worst, simplex_error(c.emission), simplex_error(c.transition), simplex_error(c.prior)});
    for (const auto& a : c.attn.attention) worst = std::max(worst, simplex_error(a));
  }
  return verdict(worst <= 1e-10, "10000 passes, max deviation " + fmt(worst, 3));
}

// 4. Fusion betweenness.
Outcome betweenness(const Options&) {
  MmwstmAdran model(fixtures::tiny_model());
  std::size_t violations = 0, coords = 0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    if (k % 100 == 0) randomize(model.params(), 9000 + k, 2.0);
    const auto c = model.introspect(fixtures::random_matrix(8, 6, k, 2.0, "fusion"));
    for (std::size_t j = 0; j < c.fused.size(); ++j, ++coords) {
      if (c.fused[j] < std::min(c.o_m[j], c.o_a[j]) || c.fused[j] > std::max(c.o_m[j], c.o_a[j])) ++violations;
    }
  }
  return verdict(violations == 0, std::to_string(coords) + " coordinates, " + std::to_string(violations) + " outside");
}

// 5. Savitzky-Golay exactness.
Outcome savgol(const Options&) {
  double worst = 0.0;
  Rng rng(5, "savgol");
  for (int trial = 0; trial < 100; ++trial) {
    const double a = rng.gaussian(0, 5), b = rng.gaussian(0, 1), c = rng.gaussian(0, 0.1), d = rng.gaussian(0, 0.01);
    std::vector<double> col(200);
    for (std::size_t t = 0; t < col.size(); ++t) {
      const double x = static_cast<double>(t);
      col[t] = a + b * x + c * x * x + d * x * x * x;
    }
    const auto s = savitzky_golay(col, 7, 3);
    for (std::size_t t = 0; t < col.size(); ++t) {
      worst = std::max(worst, std::abs(s[t] - col[t]) / std::max(1.0, std::abs(col[t])));
    }
  }
  const std::vector<double> flat(50, 21.5);
  const bool constant_ok = savitzky_golay(flat, 7, 3) == flat;
  double constant_err = 0.0;
  for (double v : savitzky_golay(flat, 7, 3)) constant_err = std::max(constant_err, std::abs(v - 21.5));
  return verdict(worst <= 1e-9 && constant_err <= 1e-12,
                 "cubic max rel " + fmt(worst, 3) + ", constant max diff " + fmt(constant_err, 3) +
                     (constant_ok ? " (bitwise)" : ""));
}

// 6. Pipeline causality audit.
Outcome causality(const Options&) {
  const auto raw = synthetic_weather(SyntheticConfig{}, 6);
  const auto r = audit_causality(raw, DatasetConfig{}, FeatureSpec{}, 20, 6);
  return verdict(r.passed() && r.cuts == 20,
                 std::to_string(r.cuts) + " cuts, " + std::to_string(r.columns_checked) + " columns, " +
                     std::to_string(r.mismatches) + " mismatches" +
                     (r.first_mismatch.empty() ? "" : " (first " + r.first_mismatch + ")") + ", " +
                     std::to_string(r.windows_checked) + " windows, " + std::to_string(r.boundary_violations) +
                     " boundary violations");
}

// Desk-scale run configuration for the synthetic skill checks.
RunConfig skill_config() {
  RunConfig rc = parse_run_config(nlohmann::json::object());
  rc.dataset.lookback = 14;
  rc.features.top_k = 8;
  rc.model.embed_dim = 16;
  rc.model.lstm_hidden = 8;
  rc.model.gru_hidden = 8;
  rc.model.stream_dim = 16;
  rc.model.n_heads = 2;
  rc.model.n_states = 4;
  rc.model.dropout_rate = 0.1;
  rc.training.batch_size = 32;
  rc.training.max_epochs = 60;
  rc.training.patience = 15;
  return rc;
}

struct SkillRun {
  std::uint64_t seed = 0;
  double persistence_rmse = 0.0;
  double extreme_rmse = 0.0;
  double mse_rmse = 0.0;
  double extreme_tail = 0.0;
  double mse_tail = 0.0;
  double seconds = 0.0;
};

// RMSE over the union of both 5% tails of the test targets.
double union_tail_rmse(const std::vector<double>& y, const std::vector<double>& p) {
  const double hi = oracle::quantile7(y, 0.95), lo = oracle::quantile7(y, 0.05);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > hi || y[i] < lo) {
      sum += (y[i] - p[i]) * (y[i] - p[i]);
      ++n;
    }
  }
  return n == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(n));
}

std::vector<SkillRun>& skill_runs() {
  static std::vector<SkillRun> runs;
  if (!runs.empty()) return runs;
  const RunConfig rc = skill_config();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = prepare_dataset(synthetic_weather(SyntheticConfig{}, seed), rc.dataset, rc.features);
    const auto& scale = data.target_scale();
    std::vector<double> y;
    for (const auto& s : data.windows.test.samples) y.push_back(scale.invert(s.y));
    SkillRun run;
    run.seed = seed;
    auto persistence = build_model(ModelKind::Persistence, rc, data);
    run.persistence_rmse = evaluate_raw(*persistence, data.windows.test, scale).rmse;
    for (LossKind kind : {LossKind::Extreme, LossKind::Mse}) {
      auto model = build_model(ModelKind::Mmwstm, rc, data);
      initialize_params(*model, seed);
      train(*model, data.windows.train, data.windows.val, rc.training, kind, seed);
      std::vector<double> p;
      for (double v : predict_all(*model, data.windows.test)) p.push_back(scale.invert(v));
      const double r = rmse(y, p), tail = union_tail_rmse(y, p);
      (kind == LossKind::Extreme ? run.extreme_rmse : run.mse_rmse) = r;
      (kind == LossKind::Extreme ? run.extreme_tail : run.mse_tail) = tail;
    }
    run.seconds = seconds_since(t0);
    std::cerr << "  seed " << seed << ": persistence " << fmt(run.persistence_rmse) << ", extreme-loss "
              << fmt(run.extreme_rmse) << " (tail " << fmt(run.extreme_tail) << "), mse-loss " << fmt(run.mse_rmse)
              << " (tail " << fmt(run.mse_tail) << "), " << fmt(run.seconds, 3) << "s\n";
    runs.push_back(run);
  }
  return runs;
}

// 7. Synthetic end-to-end skill.
Outcome skill(const Options&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& runs = skill_runs();
  double total = 0.0;
  int wins = 0;
  std::ostringstream detail;
  detail << "improvement over persistence per seed:";
  for (const auto& r : runs) {
    const double gain = 1.0 - r.extreme_rmse / r.persistence_rmse;
    if (gain >= 0.20) ++wins;
    total += r.seconds;
    detail << ' ' << fmt(100 * gain, 3) << '%';
  }
  (void)t0;
  detail << "; " << wins << "/5 seeds reach 20%; " << fmt(total, 3) << "s";
  return verdict(wins >= 3 && total <= 900.0, detail.str());
}

// 8. Extreme-loss effect.
Outcome extreme_effect(const Options&) {
  const auto& runs = skill_runs();
  int wins = 0;
  std::ostringstream detail;
  detail << "union-tail RMSE extreme vs mse:";
  for (const auto& r : runs) {
    if (r.extreme_tail <= r.mse_tail) ++wins;
    detail << ' ' << fmt(r.extreme_tail) << '/' << fmt(r.mse_tail);
  }
  detail << "; " << wins << "/5 seeds no worse";
  return verdict(wins >= 3, detail.str());
}

int run_cli(const Options& o, const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" + o.cli + "\" " + args + " >>\"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Determinism of full CLI runs.
Outcome determinism(const Options& o) {
  const fs::path root = o.workdir / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  SyntheticConfig sc;
  sc.days = 800;
  write_csv(synthetic_weather(sc, 9), (root / "synthetic.csv").string());
  std::ofstream(root / "config.json") << R"({"seed":9,"dataset":{"lookback":10},"features":{"top_k":8},
    "model":{"embed_dim":8,"lstm_hidden":4,"gru_hidden":4,"stream_dim":8,"n_heads":2,"n_states":3},
    "training":{"batch_size":32,"max_epochs":4,"patience":4}})";
  const fs::path log = root / "log.txt";
  auto full_run = [&](const std::string& name) {
    const fs::path d = root / name;
    fs::create_directories(d);
    const std::string q = "\"";
    const std::string cfg = " --config " + q + (root / "config.json").string() + q;
    const std::string data = " --data " + q + (d / "dataset.json").string() + q;
    const std::string ckpt = " --checkpoint " + q + (d / "run" / "checkpoint.json").string() + q;
    int rc = run_cli(o, "prepare" + cfg + " --input " + q + (root / "synthetic.csv").string() + q + " --out " + q +
                            (d / "dataset.json").string() + q,
                     log);
    rc |= run_cli(o, "train" + cfg + data + " --out " + q + (d / "run").string() + q, log);
    rc |= run_cli(o, "evaluate" + ckpt + data + " --report " + q + (d / "report.json").string() + q, log);
    for (const char* method : {"occlusion", "permutation", "pdp", "residuals", "kmeans", "attention", "states"}) {
      rc |= run_cli(o, std::string("explain --method ") + method + ckpt + data + " --out " + q +
                           (d / "explain").string() + q,
                    log);
    }
    rc |= run_cli(o, "augment-preview" + cfg + data + " --out " + q + (d / "augment.csv").string() + q, log);
    return rc;
  };
  if (full_run("a") != 0 || full_run("b") != 0) return verdict(false, "a CLI step failed; see " + log.string());
  std::size_t files = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), root / "a");
    if (rel.filename() == "timing.json") continue;
    ++files;
    if (slurp(entry.path()) != slurp(root / "b" / rel)) differing.push_back(rel.string());
  }
  std::string detail = std::to_string(files) + " artifacts compared (timing sidecar excluded)";
  if (!differing.empty()) detail += "; differ: " + differing.front();
  return verdict(differing.empty() && files >= 10, detail);
}

// 10. Metric oracle.
Outcome metric_oracle(const Options&) {
  const std::vector<double> y{1, 2, 3}, p{2, 2, 2};
  const auto m = regression_metrics(y, p);
  const bool fixture_ok = std::abs(m.mse - 2.0 / 3.0) <= 1e-15 && m.r2.value && std::abs(*m.r2.value) <= 1e-15;
  Rng rng(10, "metric-oracle");
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto n = static_cast<std::size_t>(2 + rng.below(299));
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.gaussian(25, 8);
      b[i] = a[i] + rng.gaussian(0.5, 2);
    }
    const auto got = regression_metrics(a, b);
    const auto want = oracle::metrics(a, b);
    for (auto [g, w] : std::vector<std::pair<double, double>>{{got.mse, want.mse},
                                                              {got.rmse, want.rmse},
                                                              {got.mae, want.mae},
                                                              {*got.r2.value, want.r2},
                                                              {*got.explained_variance.value, want.ev},
                                                              {*got.pearson_r.value, want.r},
                                                              {got.mape, want.mape}}) {
      worst = std::max(worst, std::abs(g - w) / std::max(1.0, std::abs(w)));
    }
  }
  return verdict(fixture_ok && worst <= 1e-10,
                 std::string("fixture ") + (fixture_ok ? "ok" : "wrong") + ", 100 random fixtures max diff " +
                     fmt(worst, 3));
}

// 11. Diagnostics sanity.
Outcome diagnostics_sanity(const Options&) {
  RunConfig rc = skill_config();
  rc.features.mode = FeatureMode::RawOnly;
  rc.training.max_epochs = 30;
  rc.training.augment.enabled = false;
  const auto data = prepare_dataset(synthetic_random_walk(1500, 11), rc.dataset, rc.features);
  auto model = build_model(ModelKind::Mmwstm, rc, data);
  initialize_params(*model, 11);
  train(*model, data.windows.train, data.windows.val, rc.training, LossKind::Mse, 11);
  const auto& scale = data.target_scale();
  const auto occ = importance_ranking(occlusion_sensitivity(*model, data.windows.test, scale));
  const auto perm = importance_ranking(permutation_importance(*model, data.windows.test, scale, 5, 11));
  const bool ranks_ok = occ.front() == kTargetColumn && perm.front() == kTargetColumn;

  // Planted linear dependence on the second feature, identity target scale.
  fixtures::LinearLast planted({0.3, 2.0, -0.5}, 1.0);
  WindowedDataset ds;
  ds.partition = Partition::Test;
  ds.lookback = 4;
  ds.feature_names = {"a", "b", "c"};
  for (std::uint64_t i = 0; i < 300; ++i) ds.samples.push_back({fixtures::random_matrix(4, 3, i, 1.0, "pdp"), 0.0, {}});
  const auto curve = partial_dependence(planted, ds, 1, ColumnScale{0.0, 1.0}, 20);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(curve.grid.size());
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    sx += curve.grid[i];
    sy += curve.mean_pred[i];
    sxx += curve.grid[i] * curve.grid[i];
    sxy += curve.grid[i] * curve.mean_pred[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  Tensor pts = Tensor::matrix(200, 2);
  Rng rng(11, "blobs");
  for (std::size_t i = 0; i < 200; ++i) {
    const double cx = i < 100 ? -5.0 : 5.0;
    pts.at(i, 0) = cx + rng.gaussian(0, 0.5);
    pts.at(i, 1) = rng.gaussian(0, 0.5);
  }
  const auto km = kmeans(pts, 2, 11);
  bool blobs_ok = km.assignment[0] != km.assignment[100];
  for (std::size_t i = 0; i < 200; ++i) blobs_ok = blobs_ok && km.assignment[i] == km.assignment[i < 100 ? 0 : 100];

  return verdict(ranks_ok && std::abs(slope - 2.0) <= 1e-2 && blobs_ok,
                 "occlusion first " + occ.front() + ", permutation first " + perm.front() + ", PDP slope " +
                     fmt(slope, 10) + ", k-means blobs " + (blobs_ok ? "exact" : "mixed"));
}

// 12. Augmentation contract.
Outcome augmentation(const Options&) {
  WindowedDataset train;
  train.partition = Partition::Train;
  train.lookback = 12;
  train.feature_names = {"a", "b", "c"};
  for (std::uint64_t i = 0; i < 37; ++i) {
    train.samples.push_back({fixtures::random_matrix(12, 3, i, 1.0, "aug"), static_cast<double>(i), {}});
  }
  const auto expanded = augment_dataset(train, AugmentConfig{}, Rng(12, "augment"));
  bool ok = expanded.size() == 4 * train.size();
  bool identity = true;
  double endpoint = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Tensor x = fixtures::random_matrix(12, 3, i, 1.0, "aug-id");
    Rng rng(i, "aug-id");
    identity = identity && jitter(x, rng, 0.0) == x && scale(x, rng, 1.0, 1.0) == x &&
               time_warp(x, rng, 4, 0.0) == x && magnitude_warp(x, rng, 4, 0.0) == x;
    const Tensor w = time_warp(x, rng, 4, 0.5);
    for (std::size_t c = 0; c < 3; ++c) {
      endpoint = std::max({endpoint, std::abs(w.at(0, c) - x.at(0, c)), std::abs(w.at(11, c) - x.at(11, c))});
    }
  }
  ok = ok && identity && endpoint <= 1e-9;
  return verdict(ok, std::to_string(train.size()) + " -> " + std::to_string(expanded.size()) +
                         " samples, zero-strength identities " + (identity ? "hold" : "broken") +
                         ", max time-warp endpoint drift " + fmt(endpoint, 3));
}

// 13. Real-data sanity floor.
Outcome real_data(const Options& o) {
  std::vector<fs::path> csvs;
  if (fs::is_directory(o.data_dir)) {
    for (const auto& e : fs::directory_iterator(o.data_dir)) {
      if (e.path().extension() == ".csv") csvs.push_back(e.path());
    }
  }
  if (csvs.empty()) return {Outcome::Skip, "no CSV in " + o.data_dir.string()};
  std::sort(csvs.begin(), csvs.end());
  RunConfig rc = parse_run_config(nlohmann::json::object());
  if (fs::exists(o.data_dir / "config.json")) rc = load_run_config((o.data_dir / "config.json").string());
  const auto data = prepare_dataset(load_csv(csvs.front().string()), rc.dataset, rc.features);
  auto model = build_model(ModelKind::Mmwstm, rc, data);
  const std::uint64_t seed = resolve_seed(std::nullopt, rc);
  initialize_params(*model, seed);
  train(*model, data.windows.train, data.windows.val, rc.training, rc.loss_kind, seed);
  const auto m = evaluate_raw(*model, data.windows.test, data.target_scale());
  const double r2 = m.r2.value.value_or(-1.0);
  return verdict(r2 >= 0.90, csvs.front().filename().string() + ": test R2 " + fmt(r2) + ", RMSE " + fmt(m.rmse));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremecast acceptance checks"};
  Options o;
  std::string workdir = "acceptance_work", data_dir = "data";
  std::vector<int> only;
  app.add_option("--workdir", workdir);
  app.add_option("--cli", o.cli)->required();
  app.add_option("--data-dir", data_dir);
  app.add_option("--only", only, "criterion numbers to run");
  CLI11_PARSE(app, argc, argv);
  o.workdir = workdir;
  o.data_dir = data_dir;
  fs::create_directories(o.workdir);

  const std::vector<std::pair<std::string, std::function<Outcome(const Options&)>>> criteria{
      {"gradient correctness", gradients},
      {"loss oracle equivalence", loss_oracle},
      {"simplex invariants", simplex},
      {"fusion betweenness", betweenness},
      {"Savitzky-Golay exactness", savgol},
      {"pipeline causality audit", causality},
      {"synthetic end-to-end skill", skill},
      {"extreme-loss effect", extreme_effect},
      {"determinism", determinism},
      {"metric oracle", metric_oracle},
      {"diagnostics sanity", diagnostics_sanity},
      {"augmentation contract", augmentation},
      {"real-data sanity floor", real_data},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second(o);
    } catch (const std::exception& e) {
      out = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = out.status == Outcome::Pass ? "PASS" : out.status == Outcome::Skip ? "SKIP" : "FAIL";
    if (out.status == Outcome::Fail) ++failures;
    std::cout << tag << " criterion " << number << " (" << criteria[i].first << "): " << out.detail << " ["
              << fmt(seconds_since(t0), 3) << "s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
