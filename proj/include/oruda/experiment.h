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

#ifndef ORUDA_EXPERIMENT_H_
#define ORUDA_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oruda/config.h"
#include "oruda/dataset.h"
#include "oruda/metrics.h"
#include "oruda/trainer.h"

namespace oruda {

struct InstanceRecord {
  std::int64_t id = 0;
  int label = 0;  // hidden evaluation label
  int regressor_prediction = 0;
  int prediction = 0;  // after ranking-based assignment
  bool is_private = false;
  Segment segment = Segment::kNone;
  double precedence = 0.5;
  double weight = 1.0;
  std::optional<double> rank_score;
};

struct MetricsReport {
  int version = kReportVersion;
  std::string variant;
  std::uint64_t seed = 0;
  ScenarioSpec scenario;
  bool uses_hidden_target_labels = false;
  std::optional<MaeResult> mae_common;
  std::optional<double> mae_true_common;  // over truly common instances
  std::optional<double> e_mae;
  std::optional<DetectionMetrics> detection;
  std::optional<double> source_class_accuracy;
  std::optional<double> kendall_tau_private;
  std::size_t bias_violations = 0;
  std::map<int, double> source_class_weights;
  std::vector<std::size_t> target_weight_histogram;
  std::vector<EpochRecord> history;
  KeyValueConfig config;
  std::vector<InstanceRecord> instances;
};

struct PreparedData {
  ScenarioSpec scenario;
  Dataset source_train;
  Dataset target_train;  // training sees it through UnlabeledView only
  Dataset target_test;
};

// Generated from cfg.synthetic, or loaded from cfg.feature_table and split
// by domain. Throws ConfigError if the table's ranges disagree with cfg.
std::pair<Dataset, Dataset> LoadOrGenerate(const ExperimentConfig& cfg);
PreparedData SplitData(const ExperimentConfig& cfg,
                       const std::pair<Dataset, Dataset>& data, std::uint64_t seed);

TrainConfig VariantTrainConfig(const ExperimentConfig& cfg, Variant variant,
                               std::uint64_t seed);

struct TrainedRun {
  Variant variant = Variant::kOruda;
  std::uint64_t seed = 0;
  TrainConfig train;
  ModelShape shape;
  TrainState state;
};

TrainedRun TrainVariant(const ExperimentConfig& cfg, Variant variant,
                        std::uint64_t seed, const PreparedData& data);
// Resumes a run from a checkpointed state.
TrainedRun ResumeVariant(const ExperimentConfig& cfg, Variant variant,
                         std::uint64_t seed, const PreparedData& data,
                         TrainState state);
MetricsReport EvaluateRun(const ExperimentConfig& cfg, const TrainedRun& run,
                          const PreparedData& data);
MetricsReport RunVariant(const ExperimentConfig& cfg, Variant variant,
                         std::uint64_t seed, const PreparedData& data);

struct SummaryRow {
  std::string name;
  std::size_t runs = 0;
  std::map<std::string, double> means;  // metric name -> mean over runs
};
SummaryRow Summarize(const std::string& name, const std::vector<MetricsReport>& runs);

struct ExperimentResult {
  std::vector<MetricsReport> runs;
  std::vector<SummaryRow> summary;  // one row per variant
};

// Every requested variant for seeds train.seed .. train.seed + repeats - 1
// on one shared dataset.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

struct AblationCell {
  std::string name;
  Ablations flags;
};
// The four ablation rows (no Coral; no SF and no CL; no CL; full model), or
// all eight Coral/SF/CL combinations.
std::vector<AblationCell> AblationGrid(bool full_factorial = false);

struct AblationResult {
  std::vector<AblationCell> cells;
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<MetricsReport>> reports;  // [cell][seed]
};
AblationResult RunAblation(const ExperimentConfig& cfg,
                           const std::vector<AblationCell>& cells,
                           const std::vector<std::uint64_t>& seeds);

}  // namespace oruda

#endif  // ORUDA_EXPERIMENT_H_
