// Copyright 2026 The ORUDA Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oruda/experiment.h"

#include <stdexcept>

#include "oruda/log.h"
#include "oruda/ranking.h"
#include "oruda/rng.h"
#include "oruda/synthetic.h"

namespace oruda {

std::pair<Dataset, Dataset> LoadOrGenerate(const ExperimentConfig& cfg) {
  const ScenarioSpec scenario = DeriveScenario(cfg.source_range, cfg.target_range);
  if (cfg.feature_table.empty()) return GenerateSynthetic(scenario, cfg.synthetic);
  const Dataset all = LoadFeatureTable(cfg.feature_table);
  if (all.source_range() != cfg.source_range || all.target_range() != cfg.target_range) {
    throw ConfigError("feature table ranges " + ToString(all.source_range()) + " -> " +
                      ToString(all.target_range()) + " disagree with the config");
  }
  std::vector<std::size_t> src, tgt;
  for (std::size_t i = 0; i < all.size(); ++i) {
    (all.domain(i) == Domain::kSource ? src : tgt).push_back(i);
  }
  return {all.Subset(src), all.Subset(tgt)};
}

PreparedData SplitData(const ExperimentConfig& cfg,
                       const std::pair<Dataset, Dataset>& data, std::uint64_t seed) {
  PreparedData p;
  p.scenario = DeriveScenario(cfg.source_range, cfg.target_range);
  p.source_train = Split(data.first, cfg.train_ratio, DeriveSeed(seed, Stream::kSplit, 1)).train;
  SplitResult t = Split(data.second, cfg.train_ratio, DeriveSeed(seed, Stream::kSplit, 2));
  p.target_train = std::move(t.train);
  p.target_test = std::move(t.test);
  return p;
}

TrainConfig VariantTrainConfig(const ExperimentConfig& cfg, Variant variant,
                               std::uint64_t seed) {
  TrainConfig t = cfg.train;
  t.seed = seed;
  if (variant == Variant::kNoAdaptation || variant == Variant::kSupervisedTarget) {
    t.ablations.use_adaptation = false;
  }
  return t;
}

namespace {

// The supervised bound trains on the target training split with its hidden
// labels, as if it were a labeled source.
Dataset AsLabeledSource(const Dataset& target) {
  Dataset d(target.dim(), target.target_range(), target.target_range());
  for (std::size_t i = 0; i < target.size(); ++i) {
    Instance inst = target.at(i);
    inst.domain = Domain::kSource;
    d.Add(inst);
  }
  return d;
}

TrainedRun Finish(const ExperimentConfig& cfg, Variant variant, std::uint64_t seed,
                  const PreparedData& data, std::optional<TrainState> resume) {
  TrainedRun run;
  run.variant = variant;
  run.seed = seed;
  run.train = VariantTrainConfig(cfg, variant, seed);
  if (variant == Variant::kSupervisedTarget) {
    const Dataset labeled = AsLabeledSource(data.target_train);
    const Dataset no_target;
    const Trainer trainer(labeled, no_target, run.train);
    run.shape = trainer.model().shape();
    run.state = resume ? std::move(*resume) : trainer.InitialState();
    trainer.Run(run.state);
    return run;
  }
  Trainer trainer(data.source_train, data.target_train, run.train);
  if (variant == Variant::kOracleOrder) trainer.UseOracle(HiddenLabels(data.target_train));
  run.shape = trainer.model().shape();
  run.state = resume ? std::move(*resume) : trainer.InitialState();
  trainer.Run(run.state);
  return run;
}

}  // namespace

TrainedRun TrainVariant(const ExperimentConfig& cfg, Variant variant,
                        std::uint64_t seed, const PreparedData& data) {
  return Finish(cfg, variant, seed, data, std::nullopt);
}

TrainedRun ResumeVariant(const ExperimentConfig& cfg, Variant variant,
                         std::uint64_t seed, const PreparedData& data,
                         TrainState state) {
  return Finish(cfg, variant, seed, data, std::move(state));
}

MetricsReport EvaluateRun(const ExperimentConfig& cfg, const TrainedRun& run,
                          const PreparedData& data) {
  MetricsReport r;
  r.variant = ToString(run.variant);
  r.seed = run.seed;
  r.scenario = data.scenario;
  r.history = run.state.history;
  r.config = ToKeyValues(cfg);
  r.config.Set("train.seed", std::to_string(run.seed));
  r.uses_hidden_target_labels =
      run.variant == Variant::kOracleOrder || run.variant == Variant::kSupervisedTarget;

  const OrudaModel model(run.shape);
  const ParameterBank& bank = run.state.bank;
  r.bias_violations = model.regressor().BiasOrderViolations(bank);
  const std::vector<int> truths = HiddenLabels(data.target_test);
  const std::vector<int> reg = model.Predict(bank, data.target_test.features());
  const std::size_t n = truths.size();

  std::vector<std::uint8_t> truly_common(n);
  for (std::size_t i = 0; i < n; ++i) truly_common[i] = data.scenario.IsCommon(truths[i]);
  bool any_common = false;
  for (auto c : truly_common) any_common |= c != 0;
  if (any_common) r.mae_true_common = ComputeMaskedMae(reg, truths, truly_common).mae;

  r.instances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.instances[i].id = data.target_test.id(i);
    r.instances[i].label = truths[i];
    r.instances[i].regressor_prediction = reg[i];
    r.instances[i].prediction = reg[i];
  }

  if (!run.train.ablations.use_adaptation) {
    // Baselines have no commonness model: every instance is treated as
    // common and scored against the truly common ones.
    if (any_common) r.mae_common = ComputeMaskedMae(reg, truths, truly_common);
    return r;
  }

  // Test-time commonness: each test target against l_s source instances,
  // each source class against l_t test targets.
  const std::vector<int> source_labels = data.source_train.Labels();
  const std::vector<int>& target_labels = truths;
  const bool oracle = run.variant == Variant::kOracleOrder;
  const Tensor es = model.Embed(bank, data.source_train.features());
  const Tensor et = model.Embed(bank, data.target_test.features());
  const ModelComparator learned(model.order(), bank);
  const OracleComparator exact = OracleComparator::Exact();
  const Comparator& cmp = oracle ? static_cast<const Comparator&>(exact) : learned;
  const ItemSet sources = oracle ? ItemSet{nullptr, source_labels} : ItemSet{&es, {}};
  const ItemSet targets = oracle ? ItemSet{nullptr, target_labels} : ItemSet{&et, {}};
  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = data.target_test.id(i);
  RefreshConfig rc{run.train.EffectiveFilter(), oracle ? source_labels.size() : cfg.eval_source_sample,
                   oracle ? n : cfg.eval_target_sample};
  const WeightTable table =
      RefreshWeights(cmp, sources, source_labels, data.source_train.source_range(), targets,
                     ids, rc, DeriveSeed(run.seed, Stream::kRanking), run.train.epochs + 1);
  r.source_class_weights = table.source_class_weights;
  r.target_weight_histogram = oruda::Summarize(table).histogram;

  const std::vector<PrivateVerdict> verdicts = MarkTargets(table);
  for (std::size_t i = 0; i < n; ++i) {
    r.instances[i].is_private = verdicts[i].is_private;
    r.instances[i].segment = verdicts[i].segment;
    r.instances[i].precedence = table.target_precedence[i];
    r.instances[i].weight = table.target_weights[i];
  }
  try {
    r.mae_common = ComputeMae(reg, truths, verdicts);
  } catch (const std::invalid_argument&) {
    ORUDA_LOG(Warning) << "every test target marked private; mae_common undefined";
  }
  r.detection = ComputeDetection(verdicts, truths, data.scenario);
  r.source_class_accuracy = SourceClassAccuracy(PrivateSourceClasses(table), data.scenario);

  const auto segments = RankPrivateTargets(cmp, targets, verdicts, data.scenario,
                                           cfg.rank_degree, run.seed);
  double tau_sum = 0.0;
  std::size_t tau_weight = 0;
  for (const auto& seg : segments) {
    std::vector<double> labels(seg.rows.size());
    for (std::size_t k = 0; k < seg.rows.size(); ++k) {
      const std::size_t row = seg.rows[k];
      r.instances[row].prediction = seg.classes[k];
      r.instances[row].rank_score = seg.scores[k];
      labels[k] = truths[row];
    }
    if (seg.rows.size() >= 2) {
      tau_sum += KendallTauB(seg.scores, labels) * static_cast<double>(seg.rows.size());
      tau_weight += seg.rows.size();
    }
  }
  if (tau_weight > 0) r.kendall_tau_private = tau_sum / static_cast<double>(tau_weight);
  if (!data.scenario.target_private.empty()) {
    std::vector<int> final_pred(n);
    for (std::size_t i = 0; i < n; ++i) final_pred[i] = r.instances[i].prediction;
    r.e_mae = ComputeEmae(final_pred, truths);
  }
  return r;
}

MetricsReport RunVariant(const ExperimentConfig& cfg, Variant variant,
                         std::uint64_t seed, const PreparedData& data) {
  return EvaluateRun(cfg, TrainVariant(cfg, variant, seed, data), data);
}

SummaryRow Summarize(const std::string& name, const std::vector<MetricsReport>& runs) {
  SummaryRow row;
  row.name = name;
  row.runs = runs.size();
  std::map<std::string, std::pair<double, std::size_t>> acc;
  auto add = [&](const std::string& key, double v) {
    acc[key].first += v;
    ++acc[key].second;
  };
  for (const auto& r : runs) {
    if (r.mae_common) add("mae_common", r.mae_common->mae);
    if (r.mae_true_common) add("mae_true_common", *r.mae_true_common);
    if (r.e_mae) add("e_mae", *r.e_mae);
    if (r.detection) add("balanced_accuracy", r.detection->balanced_accuracy);
    if (r.source_class_accuracy) add("source_class_accuracy", *r.source_class_accuracy);
    if (r.kendall_tau_private) add("kendall_tau_private", *r.kendall_tau_private);
  }
  // A metric is averaged only if every run reports it.
  for (const auto& [key, sum] : acc) {
    if (sum.second == runs.size()) row.means[key] = sum.first / static_cast<double>(sum.second);
  }
  return row;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  const auto data = LoadOrGenerate(cfg);
  ExperimentResult result;
  std::map<Variant, std::vector<MetricsReport>> by_variant;
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    const std::uint64_t seed = cfg.train.seed + static_cast<std::uint64_t>(rep);
    const PreparedData prepared = SplitData(cfg, data, seed);
    for (Variant v : cfg.variants) {
      ORUDA_LOG(Info) << "running " << ToString(v) << " seed " << seed;
      MetricsReport r = RunVariant(cfg, v, seed, prepared);
      by_variant[v].push_back(r);
      result.runs.push_back(std::move(r));
    }
  }
  for (Variant v : cfg.variants) {
    result.summary.push_back(Summarize(ToString(v), by_variant[v]));
  }
  return result;
}

std::vector<AblationCell> AblationGrid(bool full_factorial) {
  auto cell = [](bool coral, bool sf, bool cl) {
    AblationCell c;
    c.flags.use_coral_loss = coral;
    c.flags.use_smooth_filter = sf;
    c.flags.use_curriculum = cl;
    c.name = std::string("coral=") + (coral ? "1" : "0") + "_sf=" + (sf ? "1" : "0") +
             "_cl=" + (cl ? "1" : "0");
    return c;
  };
  if (!full_factorial) {
    return {cell(false, true, true), cell(true, false, false), cell(true, true, false),
            cell(true, true, true)};
  }
  std::vector<AblationCell> cells;
  for (int mask = 0; mask < 8; ++mask) {
    cells.push_back(cell(mask & 4, mask & 2, mask & 1));
  }
  return cells;
}

AblationResult RunAblation(const ExperimentConfig& cfg,
                           const std::vector<AblationCell>& cells,
                           const std::vector<std::uint64_t>& seeds) {
  cfg.Validate();
  const auto data = LoadOrGenerate(cfg);
  AblationResult result;
  result.cells = cells;
  result.seeds = seeds;
  result.reports.resize(cells.size());
  for (std::uint64_t seed : seeds) {
    const PreparedData prepared = SplitData(cfg, data, seed);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      ExperimentConfig cell_cfg = cfg;
      cell_cfg.train.ablations = cells[c].flags;
      ORUDA_LOG(Info) << "ablation cell " << cells[c].name << " seed " << seed;
      MetricsReport r = RunVariant(cell_cfg, Variant::kOruda, seed, prepared);
      r.variant = "oruda/" + cells[c].name;
      result.reports[c].push_back(std::move(r));
    }
  }
  return result;
}

}  // namespace oruda
