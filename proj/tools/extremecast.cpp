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

// extremecast command-line interface.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 configuration, 3 data,
// 4 numeric, 5 checkpoint/dataset compatibility.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "extremecast/config.hpp"
#include "extremecast/diagnostics.hpp"
#include "extremecast/errors.hpp"
#include "extremecast/mmwstm_adran.hpp"
#include "extremecast/serialization.hpp"
#include "extremecast/synthetic.hpp"
#include "extremecast/trainer.hpp"

namespace fs = std::filesystem;
using namespace extremecast;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? parse_run_config(json::object()) : load_run_config(path);
}

PreparedDataset load_dataset(const std::string& path) { return dataset_from_json(read_json(path)); }

Checkpoint load_checkpoint(const std::string& path) { return checkpoint_from_json(read_json(path)); }

// ---- prepare ----
struct PrepareArgs {
  std::string config, input, out, audit, mode;
};

int cmd_prepare(const PrepareArgs& a) {
  RunConfig cfg = config_or_default(a.config);
  if (!a.mode.empty()) {
    try {
      cfg.features.mode = parse_feature_mode(a.mode);
    } catch (const std::exception& e) {
      throw ConfigError("features.mode", e.what());
    }
  }
  const std::string input = a.input.empty() ? cfg.dataset.csv_path : a.input;
  if (input.empty()) throw ConfigError("dataset.csv_path", "no input CSV given");
  const auto table = load_csv(input);
  const auto data = prepare_dataset(table, cfg.dataset, cfg.features);
  fs::path out(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_json(a.out, dataset_json(data));
  const std::string audit = a.audit.empty() ? (out.parent_path() / (out.stem().string() + ".features.csv")).string()
                                            : a.audit;
  write_feature_audit_csv(data, audit);
  std::cout << "rows " << data.series_dates.size() << " features " << data.feature_names.size() << " train "
            << data.windows.train.size() << " val " << data.windows.val.size() << " test "
            << data.windows.test.size() << '\n';
  return 0;
}

// ---- train / baseline ----
struct TrainArgs {
  std::string config, data, out, model = "mmwstm";
  std::optional<std::uint64_t> seed;
};

int cmd_train(const TrainArgs& a) {
  const RunConfig cfg = config_or_default(a.config);
  const std::uint64_t seed = resolve_seed(a.seed, cfg);
  const ModelKind kind = parse_model_kind(a.model);
  const PreparedDataset data = load_dataset(a.data);
  auto model = build_model(kind, cfg, data);
  initialize_params(*model, seed);
  const LossKind loss = kind == ModelKind::Mmwstm ? cfg.loss_kind : cfg.baseline_loss_kind;
  const TrainResult result = train(*model, data.windows.train, data.windows.val, cfg.training, loss, seed);
  fs::create_directories(a.out);
  const fs::path dir(a.out);
  write_json((dir / "checkpoint.json").string(), checkpoint_json(*model, data, result, loss, seed));
  write_history_csv(result, (dir / "history.csv").string());
  write_json((dir / "timing.json").string(), json{{"wall_clock_to_best", result.wall_clock_to_best},
                                                  {"wall_clock_total", result.wall_clock_total}});
  std::cout << "model " << model_kind_name(kind) << " epochs " << result.history.size() << " best_val_loss "
            << csv_number(result.best_val_loss) << '\n';
  return 0;
}

// ---- evaluate ----
struct EvaluateArgs {
  std::string checkpoint, data, report, residuals, timing;
  double tail_q = 0.05;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const Checkpoint ckpt = load_checkpoint(a.checkpoint);
  const PreparedDataset data = load_dataset(a.data);
  EvaluationReport report = evaluate_checkpoint(ckpt, data, a.tail_q);
  if (!a.timing.empty()) {
    report.training_time_s = read_json(a.timing).at("wall_clock_to_best").get<double>();
  }
  const fs::path out(a.report);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_json(a.report, report_json(report));
  const std::string residuals =
      a.residuals.empty() ? (out.parent_path() / (out.stem().string() + ".residuals.csv")).string() : a.residuals;
  write_residuals_csv(report, residuals);
  std::cout << "rmse " << csv_number(report.metrics.rmse) << " mae " << csv_number(report.metrics.mae) << '\n';
  return 0;
}

// ---- explain ----
struct ExplainArgs {
  std::string checkpoint, data, method, out, feature;
  std::size_t sample = 0, repeats = 5, k = 4, grid = 20;
  std::optional<std::uint64_t> seed;
};

void write_importance(const ImportanceResult& r, const fs::path& path, bool with_std) {
  auto out = open_out(path);
  out << (with_std ? "feature,mean_drop,std,repeats\n" : "feature,delta_rmse\n");
  for (const auto& f : r.features) {
    out << f.feature << ',' << csv_number(f.delta_rmse);
    if (with_std) out << ',' << csv_number(f.std) << ',' << f.repeats;
    out << '\n';
  }
}

void write_matrix(const Tensor& m, const fs::path& path, const std::string& col_prefix) {
  auto out = open_out(path);
  for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << col_prefix << j;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << csv_number(m.at(r, j));
    out << '\n';
  }
}

int cmd_explain(const ExplainArgs& a) {
  static const std::vector<std::string> methods{"occlusion", "pdp",       "permutation", "residuals",
                                                "kmeans",    "attention", "states"};
  if (std::find(methods.begin(), methods.end(), a.method) == methods.end()) {
    std::string list;
    for (const auto& m : methods) list += (list.empty() ? "" : "|") + m;
    throw ConfigError("method", "unknown method '" + a.method + "' (valid: " + list + ")");
  }
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const PreparedDataset data = load_dataset(a.data);
  const std::uint64_t seed = a.seed.value_or(0);
  if (a.method == "kmeans") {
    const auto km = kmeans_regimes(data.series_dates, data.series_target, a.k, seed);
    auto out = open_out(dir / "kmeans_assignments.csv");
    out << "date,cluster\n";
    for (std::size_t i = 0; i < km.assignment.size(); ++i) {
      out << format_iso_date(data.series_dates[i]) << ',' << km.assignment[i] << '\n';
    }
    auto cent = open_out(dir / "kmeans_centroids.csv");
    cent << "cluster,year,month," << data.target << '\n';
    for (std::size_t c = 0; c < a.k; ++c) {
      cent << c << ',' << csv_number(km.centroids.at(c, 0)) << ',' << csv_number(km.centroids.at(c, 1)) << ','
           << csv_number(km.centroids.at(c, 2)) << '\n';
    }
    return 0;
  }
  const Checkpoint ckpt = load_checkpoint(a.checkpoint);
  check_compatible(ckpt, data);
  const ColumnScale& target = ckpt.scaler.at(ckpt.target);
  const auto& test = data.windows.test;
  if (a.method == "occlusion") {
    write_importance(occlusion_sensitivity(*ckpt.model, test, target), dir / "occlusion.csv", false);
  } else if (a.method == "permutation") {
    write_importance(permutation_importance(*ckpt.model, test, target, a.repeats, seed), dir / "permutation.csv",
                     true);
  } else if (a.method == "pdp") {
    std::vector<std::size_t> features;
    if (a.feature.empty()) {
      for (std::size_t f = 0; f < test.feature_count(); ++f) features.push_back(f);
    } else {
      const std::size_t f = test.feature_index(a.feature);
      if (f == test.feature_count()) throw ConfigError("feature", "unknown feature '" + a.feature + "'");
      features.push_back(f);
    }
    auto out = open_out(dir / "pdp.csv");
    out << "feature,grid,mean_prediction\n";
    for (std::size_t f : features) {
      const auto curve = partial_dependence(*ckpt.model, test, f, target, a.grid);
      if (!curve.warning.empty()) std::cerr << "warning: " << curve.feature << ": " << curve.warning << '\n';
      for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out << curve.feature << ',' << csv_number(curve.grid[i]) << ',' << csv_number(curve.mean_pred[i]) << '\n';
      }
    }
  } else if (a.method == "residuals") {
    const auto report = evaluate_checkpoint(ckpt, data, 0.05);
    std::vector<double> resid;
    for (std::size_t i = 0; i < report.y.size(); ++i) resid.push_back(report.y[i] - report.yhat[i]);
    if (resid.size() < 30) std::cerr << "warning: fewer than 30 residuals\n";
    const auto diag = residual_diagnostics(resid, report.yhat);
    auto acf = open_out(dir / "residual_acf.csv");
    acf << "lag,acf,lower,upper\n";
    for (std::size_t k = 0; k < diag.acf.size(); ++k) {
      acf << k + 1 << ',' << csv_number(diag.acf[k]) << ',' << csv_number(-diag.band) << ','
          << csv_number(diag.band) << '\n';
    }
    auto hist = open_out(dir / "residual_histogram.csv");
    hist << "left,right,count\n";
    for (std::size_t b = 0; b < diag.histogram.counts.size(); ++b) {
      hist << csv_number(diag.histogram.edges[b]) << ',' << csv_number(diag.histogram.edges[b + 1]) << ','
           << diag.histogram.counts[b] << '\n';
    }
    auto qq = open_out(dir / "residual_qq.csv");
    qq << "theoretical,empirical\n";
    for (const auto& [t, e] : diag.qq) qq << csv_number(t) << ',' << csv_number(e) << '\n';
    auto rvp = open_out(dir / "residual_vs_predicted.csv");
    rvp << "predicted,residual\n";
    for (const auto& [p, r] : diag.residual_vs_pred) rvp << csv_number(p) << ',' << csv_number(r) << '\n';
  } else {
    const auto* model = dynamic_cast<const MmwstmAdran*>(ckpt.model.get());
    if (model == nullptr) throw CompatibilityError("method " + a.method + " needs an mmwstm checkpoint");
    if (a.sample >= test.size()) throw ConfigError("sample", "index beyond the test set");
    const auto c = model->introspect(test.samples[a.sample].x);
    if (a.method == "attention") {
      Tensor mean = Tensor::matrix(c.attn.attention[0].rows(), c.attn.attention[0].cols());
      for (std::size_t h = 0; h < c.attn.attention.size(); ++h) {
        write_matrix(c.attn.attention[h], dir / ("attention_head" + std::to_string(h) + ".csv"), "t");
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += c.attn.attention[h][i] / static_cast<double>(c.attn.attention.size());
      }
      write_matrix(mean, dir / "attention.csv", "t");
    } else {
      write_matrix(c.emission, dir / "state_probabilities.csv", "state");
      write_matrix(c.prior, dir / "state_prior.csv", "state");
      write_matrix(c.transition, dir / "transition.csv", "state");
    }
  }
  return 0;
}

// ---- augment-preview ----
struct AugmentArgs {
  std::string config, data, out;
  std::size_t sample = 0;
  std::optional<std::uint64_t> seed;
};

int cmd_augment_preview(const AugmentArgs& a) {
  const RunConfig cfg = config_or_default(a.config);
  const PreparedDataset data = load_dataset(a.data);
  if (a.sample >= data.windows.train.size()) throw ConfigError("sample", "index beyond the training set");
  WindowedDataset one = data.windows.train;
  one.samples.assign(1, data.windows.train.samples[a.sample]);
  AugmentConfig aug = cfg.training.augment;
  aug.enabled = true;
  const auto out_ds = augment_dataset(one, aug, Rng(resolve_seed(a.seed, cfg), "augment"));
  auto out = open_out(a.out);
  static const char* kinds[] = {"original", "jitter", "scale", "warp"};
  out << "variant,step";
  for (const auto& f : data.feature_names) out << ',' << f;
  out << '\n';
  for (std::size_t v = 0; v < out_ds.size(); ++v) {
    const Tensor& x = out_ds.samples[v].x;
    for (std::size_t t = 0; t < x.rows(); ++t) {
      out << kinds[v] << ',' << t;
      for (std::size_t j = 0; j < x.cols(); ++j) out << ',' << csv_number(x.at(t, j));
      out << '\n';
    }
  }
  return 0;
}

// ---- synth ----
struct SynthArgs {
  std::size_t days = 2000;
  std::uint64_t seed = 0;
  std::string out;
  bool random_walk = false;
};

int cmd_synth(const SynthArgs& a) {
  SyntheticConfig cfg;
  cfg.days = a.days;
  cfg.spikes = std::min(cfg.spikes, a.days);
  const auto table = a.random_walk ? synthetic_random_walk(a.days, a.seed) : synthetic_weather(cfg, a.seed);
  const fs::path out(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_csv(table, a.out);
  return 0;
}

// ---- ablate ----
struct AblateArgs {
  std::string kind, config, input, data, out, model = "mmwstm";
  std::vector<double> fractions{0.2, 0.4, 0.6, 0.8, 1.0};
  std::optional<std::uint64_t> seed;
};

void write_metrics_row(std::ostream& out, const RegressionMetrics& m) {
  out << csv_number(m.rmse) << ',' << csv_number(m.mae) << ',' << (m.r2.value ? csv_number(*m.r2.value) : "");
}

int cmd_ablate(const AblateArgs& a) {
  const RunConfig cfg = config_or_default(a.config);
  const std::uint64_t seed = resolve_seed(a.seed, cfg);
  const ModelKind kind = parse_model_kind(a.model);
  const LossKind loss = kind == ModelKind::Mmwstm ? cfg.loss_kind : cfg.baseline_loss_kind;
  const ModelFactory factory = [&](const PreparedDataset& d) { return build_model(kind, cfg, d); };
  if (a.kind == "fraction") {
    const PreparedDataset data = load_dataset(a.data);
    const auto rows = learning_curve(data, factory, a.fractions, cfg.training, loss, seed);
    auto out = open_out(a.out);
    out << "fraction,train_samples,rmse,mae,r2,skipped\n";
    for (const auto& r : rows) {
      out << csv_number(r.fraction) << ',' << r.train_samples << ',';
      if (r.skipped) {
        std::cerr << "warning: fraction " << r.fraction << " skipped: " << r.reason << '\n';
        out << ",,,1\n";
      } else {
        write_metrics_row(out, r.metrics);
        out << ",0\n";
      }
    }
  } else if (a.kind == "features") {
    const std::string input = a.input.empty() ? cfg.dataset.csv_path : a.input;
    if (input.empty()) throw ConfigError("dataset.csv_path", "no input CSV given");
    const auto table = load_csv(input);
    std::vector<PreparedDataset> sets;
    for (FeatureMode m : {FeatureMode::Full, FeatureMode::Minimal, FeatureMode::RawOnly}) {
      FeatureSpec spec = cfg.features;
      spec.mode = m;
      sets.push_back(prepare_dataset(table, cfg.dataset, spec));
    }
    const auto rows = feature_ablation(sets, factory, cfg.training, loss, seed);
    auto out = open_out(a.out);
    out << "mode,features,rmse,mae,r2\n";
    for (const auto& r : rows) {
      out << r.mode << ',' << r.feature_count << ',';
      write_metrics_row(out, r.metrics);
      out << '\n';
    }
  } else {
    throw ConfigError("kind", "unknown ablation '" + a.kind + "' (fraction|features)");
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"MMWSTM-ADRAN+ daily maximum temperature forecasting"};
  app.require_subcommand(1);

  PrepareArgs prep;
  auto* p = app.add_subcommand("prepare", "Build the windowed dataset from a daily CSV");
  p->add_option("--config", prep.config, "Run configuration JSON");
  p->add_option("--input", prep.input, "Daily weather CSV");
  p->add_option("--out", prep.out, "Prepared dataset JSON")->required();
  p->add_option("--audit", prep.audit, "Feature audit CSV");
  p->add_option("--mode", prep.mode, "Override features.mode (full|minimal|raw_only)");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a model and write checkpoint.json, history.csv, timing.json");
  t->add_option("--config", tr.config);
  t->add_option("--data", tr.data)->required();
  t->add_option("--out", tr.out, "Output directory")->required();
  t->add_option("--seed", tr.seed);
  t->add_option("--model", tr.model, "mmwstm|tcn|nbeats|persistence");

  TrainArgs bl;
  bl.model = "persistence";
  auto* b = app.add_subcommand("baseline", "Train a baseline (tcn|nbeats|persistence)");
  b->add_option("--config", bl.config);
  b->add_option("--data", bl.data)->required();
  b->add_option("--out", bl.out)->required();
  b->add_option("--seed", bl.seed);
  b->add_option("--model", bl.model)->check(CLI::IsMember({"tcn", "nbeats", "persistence"}));

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score a checkpoint on the test partition");
  e->add_option("--checkpoint", ev.checkpoint)->required();
  e->add_option("--data", ev.data)->required();
  e->add_option("--report", ev.report)->required();
  e->add_option("--residuals", ev.residuals);
  e->add_option("--timing", ev.timing, "timing.json to fill training_time_s");
  e->add_option("--tail-q", ev.tail_q);

  ExplainArgs ex;
  auto* x = app.add_subcommand("explain", "Diagnostics and introspection exports");
  x->add_option("--checkpoint", ex.checkpoint);
  x->add_option("--data", ex.data)->required();
  x->add_option("--method", ex.method)->required();
  x->add_option("--out", ex.out)->required();
  x->add_option("--sample", ex.sample);
  x->add_option("--repeats", ex.repeats);
  x->add_option("--feature", ex.feature);
  x->add_option("--k", ex.k);
  x->add_option("--grid", ex.grid);
  x->add_option("--seed", ex.seed);

  AugmentArgs au;
  auto* ap = app.add_subcommand("augment-preview", "Write the augmented copies of one training window");
  ap->add_option("--config", au.config);
  ap->add_option("--data", au.data)->required();
  ap->add_option("--out", au.out)->required();
  ap->add_option("--sample", au.sample);
  ap->add_option("--seed", au.seed);

  SynthArgs sy;
  auto* s = app.add_subcommand("synth", "Generate a synthetic daily CSV");
  s->add_option("--days", sy.days);
  s->add_option("--seed", sy.seed);
  s->add_option("--out", sy.out)->required();
  s->add_flag("--random-walk", sy.random_walk);

  AblateArgs ab;
  auto* ac = app.add_subcommand("ablate", "Learning-curve or feature-mode ablation");
  ac->add_option("--kind", ab.kind, "fraction|features")->required();
  ac->add_option("--config", ab.config);
  ac->add_option("--input", ab.input, "CSV (features)");
  ac->add_option("--data", ab.data, "Prepared dataset (fraction)");
  ac->add_option("--out", ab.out)->required();
  ac->add_option("--model", ab.model);
  ac->add_option("--fractions", ab.fractions);
  ac->add_option("--seed", ab.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }
  if (*p) return cmd_prepare(prep);
  if (*t) return cmd_train(tr);
  if (*b) return cmd_train(bl);
  if (*e) return cmd_evaluate(ev);
  if (*x) return cmd_explain(ex);
  if (*ap) return cmd_augment_preview(au);
  if (*s) return cmd_synth(sy);
  if (*ac) return cmd_ablate(ab);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 4;
  } catch (const CompatibilityError& e) {
    std::cerr << "compatibility error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
