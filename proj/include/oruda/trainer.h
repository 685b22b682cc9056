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

#ifndef ORUDA_TRAINER_H_
#define ORUDA_TRAINER_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oruda/commonness.h"
#include "oruda/dataset.h"
#include "oruda/model.h"
#include "oruda/order.h"
#include "oruda/params.h"

namespace oruda {

struct Ablations {
  bool use_coral_loss = true;     // false: softmax classification head
  bool use_smooth_filter = true;  // false: binary filter
  bool use_curriculum = true;     // false: alpha = 1 from the start
  bool use_adaptation = true;     // false: gamma = 0, no G_o, G_d or refresh
};

struct TrainConfig {
  double gamma = 1.0;
  int epochs = 30;
  std::size_t batch_size = 64;
  double lr = 1e-4;
  std::uint64_t seed = 0;
  FilterConfig filter;
  OrderConfig order;
  CurriculumSchedule curriculum;
  Ablations ablations;
  std::size_t pairs_per_batch = 64;
  std::size_t refresh_source_sample = 100;
  std::size_t refresh_target_sample = 100;
  std::size_t refresh_class_sample = 10;  // source members per class
  // Used when use_coral_loss is true; kIndependent selects the
  // non-shared threshold layer.
  HeadKind coral_head = HeadKind::kCoral;
  ModelShape shape;  // input_dim and source_range are filled from the data

  // Throws std::invalid_argument on gamma < 0, epochs < 1 or batch_size < 1.
  void Validate() const;
  HeadKind EffectiveHead() const;
  FilterConfig EffectiveFilter() const;
  double EffectiveGamma() const;
  double Alpha(int epoch) const;
};

struct EpochRecord {
  int epoch = 0;  // 1-based index of the finished epoch
  double alpha = 0.0;
  double loss_or = 0.0;
  double loss_ord = 0.0;
  double loss_dom = 0.0;
  double loss_total = 0.0;
  double mean_target_weight = 1.0;
  double private_fraction = 0.0;
  std::size_t private_source_classes = 0;
  std::size_t bias_violations = 0;
  std::vector<std::size_t> weight_histogram;
};

struct TrainState {
  ParameterBank bank;
  WeightTable weights;
  int epoch = 0;               // completed epochs
  std::uint64_t iteration = 0;  // completed iterations
  std::vector<EpochRecord> history;
};

// Raised on a non-finite loss; the message lists the epoch, iteration, loss
// parts and the ids of the offending batch.
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LossParts {
  double loss_or = 0.0;
  double loss_ord = 0.0;
  double loss_dom = 0.0;
  double total = 0.0;
};

// Inputs of one iteration, already resolved to row indices.
struct IterationBatch {
  std::vector<std::size_t> source;
  std::vector<std::size_t> target;
  std::vector<LabeledPair> pairs;  // indices into the source set
  std::uint64_t dropout_seed = 0;
};

class Trainer {
 public:
  // `target` is read through an unlabeled view only.
  Trainer(const Dataset& source, const Dataset& target, TrainConfig cfg);

  const OrudaModel& model() const { return model_; }
  const TrainConfig& config() const { return cfg_; }

  TrainState InitialState() const;
  // Runs the remaining epochs of `state` up to cfg.epochs.
  void Run(TrainState& state) const;
  // One epoch: iterations, weight refresh, history record.
  void RunEpoch(TrainState& state) const;

  // The batch drawn at the given epoch and global iteration.
  IterationBatch DrawBatch(int epoch, std::uint64_t iteration,
                           std::size_t batch_in_epoch) const;
  // L_or + gamma (L_ord + L_dom) on frozen parameters; the domain term uses
  // the batch's dropout draw.
  LossParts TotalLoss(const ParameterBank& bank, const WeightTable& weights,
                      const IterationBatch& batch) const;
  // Accumulates gradients of every player into `bank` and returns the loss
  // parts: F, G_r, G_o descend the total loss; G_d holds -d L_dom.
  LossParts Gradients(ParameterBank& bank, const WeightTable& weights,
                      const IterationBatch& batch) const;
  // Recomputes the weight table from the current parameters.
  WeightTable Refresh(const ParameterBank& bank, int epoch) const;

  std::size_t BatchesPerEpoch() const;

  // Evaluation-only hook for the oracle_order variant: refreshes use the
  // exact label oracle on these hidden target labels over full sets.
  void UseOracle(std::vector<int> hidden_target_labels);
  bool uses_oracle() const { return !oracle_target_labels_.empty(); }

 private:
  const Dataset* source_;
  UnlabeledView target_;
  TrainConfig cfg_;
  OrudaModel model_;
  std::vector<int> source_labels_;
  PairSampler sampler_;
  std::vector<int> oracle_target_labels_;
};

// Convenience wrapper: fresh state, full run.
TrainState Train(const Dataset& source, const Dataset& target,
                 const TrainConfig& cfg);

// Checkpoint file: header line, one JSON line with the epoch counters,
// weight table and history, then the parameter bank in the params format.
std::string FormatCheckpoint(const TrainState& state);
TrainState ParseCheckpoint(const std::string& text);
void SaveCheckpoint(const TrainState& state, const std::string& path);
TrainState LoadCheckpoint(const std::string& path);

std::string FormatHistory(const std::vector<EpochRecord>& history);

}  // namespace oruda

#endif  // ORUDA_TRAINER_H_
