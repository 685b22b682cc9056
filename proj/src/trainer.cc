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

#include "oruda/trainer.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "oruda/log.h"
#include "oruda/rng.h"

namespace oruda {

void TrainConfig::Validate() const {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be > 0");
  if (order.tau < 0) throw std::invalid_argument("tau must be >= 0");
  if (pairs_per_batch < 1) throw std::invalid_argument("pairs_per_batch must be >= 1");
  if (refresh_source_sample < 1 || refresh_target_sample < 1 || refresh_class_sample < 1) {
    throw std::invalid_argument("refresh sample sizes must be >= 1");
  }
  filter.Validate();
}

HeadKind TrainConfig::EffectiveHead() const {
  return ablations.use_coral_loss ? coral_head : HeadKind::kSoftmax;
}

FilterConfig TrainConfig::EffectiveFilter() const {
  FilterConfig f = filter;
  f.mode = ablations.use_smooth_filter ? FilterMode::kSmooth : FilterMode::kBinary;
  return f;
}

double TrainConfig::EffectiveGamma() const {
  return ablations.use_adaptation ? gamma : 0.0;
}

double TrainConfig::Alpha(int epoch) const {
  return ablations.use_curriculum ? CurriculumAlpha(epoch, curriculum) : 1.0;
}

namespace {

ModelShape ResolveShape(const TrainConfig& cfg, const Dataset& source) {
  ModelShape s = cfg.shape;
  s.input_dim = source.dim();
  s.source_range = source.source_range();
  s.head = cfg.EffectiveHead();
  return s;
}

bool Finite(const LossParts& p) {
  return std::isfinite(p.loss_or) && std::isfinite(p.loss_ord) &&
         std::isfinite(p.loss_dom) && std::isfinite(p.total);
}

std::vector<double> TargetWeights(const WeightTable& table,
                                  std::span<const std::size_t> rows) {
  std::vector<double> w(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) w[i] = table.target_weights.at(rows[i]);
  return w;
}

}  // namespace

Trainer::Trainer(const Dataset& source, const Dataset& target, TrainConfig cfg)
    : source_(&source),
      target_(target),
      cfg_(std::move(cfg)),
      model_(ResolveShape(cfg_, source)),
      source_labels_(source.Labels()),
      sampler_(source_labels_, source.source_range()) {
  cfg_.Validate();
  if (source.empty()) throw std::invalid_argument("empty source training set");
  if (cfg_.ablations.use_adaptation && target.empty()) {
    throw std::invalid_argument("empty target training set");
  }
  if (!target.empty() && target.dim() != source.dim()) {
    throw std::invalid_argument("source and target feature dimensions differ");
  }
}

std::size_t Trainer::BatchesPerEpoch() const {
  return (source_->size() + cfg_.batch_size - 1) / cfg_.batch_size;
}

TrainState Trainer::InitialState() const {
  TrainState s;
  s.bank = model_.Init(cfg_.seed);
  std::vector<std::int64_t> ids(target_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = target_.id(i);
  s.weights = WeightTable::Uniform(ids, source_->source_range());
  return s;
}

IterationBatch Trainer::DrawBatch(int epoch, std::uint64_t iteration,
                                  std::size_t batch_in_epoch) const {
  IterationBatch b;
  const auto source_batches =
      Batches(source_->size(), cfg_.batch_size,
              DeriveSeed(cfg_.seed, Stream::kSourceShuffle, static_cast<std::uint64_t>(epoch)));
  b.source = source_batches.at(batch_in_epoch);
  b.dropout_seed = DeriveSeed(cfg_.seed, Stream::kDropout, iteration);
  if (!cfg_.ablations.use_adaptation) return b;

  const std::size_t per_cycle = (target_.size() + cfg_.batch_size - 1) / cfg_.batch_size;
  const std::uint64_t cycle = iteration / per_cycle;
  const auto target_batches =
      Batches(target_.size(), cfg_.batch_size,
              DeriveSeed(cfg_.seed, Stream::kTargetShuffle, cycle));
  b.target = target_batches[iteration % per_cycle];
  b.pairs = sampler_.Sample(cfg_.Alpha(epoch), cfg_.pairs_per_batch, cfg_.order.tau,
                            DeriveSeed(cfg_.seed, Stream::kPairs, iteration));
  return b;
}

LossParts Trainer::TotalLoss(const ParameterBank& bank, const WeightTable& weights,
                             const IterationBatch& batch) const {
  LossParts p;
  const Network& f = model_.extractor();
  const Tensor fs = f.Forward(bank, GatherRows(source_->features(), batch.source), Mode::kTrain);
  std::vector<int> ys(batch.source.size());
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = source_labels_[batch.source[i]];
  p.loss_or = model_.regressor().Loss(model_.regressor().Forward(bank, fs), ys);

  if (cfg_.ablations.use_adaptation) {
    std::vector<std::size_t> first, second;
    std::vector<int> labels;
    for (const auto& pr : batch.pairs) {
      first.push_back(pr.first);
      second.push_back(pr.second);
      labels.push_back(pr.label);
    }
    const Tensor f1 = f.Forward(bank, GatherRows(source_->features(), first), Mode::kTrain);
    const Tensor f2 = f.Forward(bank, GatherRows(source_->features(), second), Mode::kTrain);
    p.loss_ord = OrderHead::Loss(model_.order().Forward(bank, f1, f2), labels);

    DomainBatch db;
    db.source = fs;
    db.target = f.Forward(bank, GatherRows(target_.features(), batch.target), Mode::kTrain);
    db.w_source = weights.SourceWeights(ys);
    db.w_target = TargetWeights(weights, batch.target);
    db.dropout_seed = batch.dropout_seed;
    p.loss_dom = model_.discriminator().Evaluate(bank, db);
  }
  p.total = p.loss_or + cfg_.EffectiveGamma() * (p.loss_ord + p.loss_dom);
  return p;
}

LossParts Trainer::Gradients(ParameterBank& bank, const WeightTable& weights,
                             const IterationBatch& batch) const {
  LossParts p;
  const double gamma = cfg_.EffectiveGamma();
  const Network& f = model_.extractor();
  const OrdinalHead& regressor = model_.regressor();

  ForwardCache fs_cache;
  const Tensor fs = f.Forward(bank, GatherRows(source_->features(), batch.source),
                              Mode::kTrain, 0, &fs_cache);
  std::vector<int> ys(batch.source.size());
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = source_labels_[batch.source[i]];
  OrdinalHeadCache r_cache;
  const Tensor r_probs = regressor.Forward(bank, fs, &r_cache);
  Tensor r_grad;
  p.loss_or = regressor.Loss(r_probs, ys, &r_grad);
  Tensor d_fs = regressor.Backward(bank, r_cache, r_grad);

  if (cfg_.ablations.use_adaptation) {
    // Order loss on curriculum pairs, scaled by gamma.
    std::vector<std::size_t> first, second;
    std::vector<int> labels;
    for (const auto& pr : batch.pairs) {
      first.push_back(pr.first);
      second.push_back(pr.second);
      labels.push_back(pr.label);
    }
    ForwardCache c1, c2;
    const Tensor f1 = f.Forward(bank, GatherRows(source_->features(), first), Mode::kTrain, 0, &c1);
    const Tensor f2 = f.Forward(bank, GatherRows(source_->features(), second), Mode::kTrain, 0, &c2);
    OrderHeadCache o_cache;
    const Tensor o_probs = model_.order().Forward(bank, f1, f2, &o_cache);
    Tensor o_grad;
    p.loss_ord = OrderHead::Loss(o_probs, labels, &o_grad);
    for (double& v : o_grad.values()) v *= gamma;
    Tensor d_diff = model_.order().Backward(bank, o_cache, o_grad);
    f.Backward(bank, c1, d_diff);
    for (double& v : d_diff.values()) v = -v;
    f.Backward(bank, c2, d_diff);

    // Domain loss: G_d accumulates ascent gradients, F receives
    // gamma * d L_dom / d f and descends it.
    ForwardCache ft_cache;
    DomainBatch db;
    db.source = fs;
    db.target = f.Forward(bank, GatherRows(target_.features(), batch.target),
                          Mode::kTrain, 0, &ft_cache);
    db.w_source = weights.SourceWeights(ys);
    db.w_target = TargetWeights(weights, batch.target);
    db.dropout_seed = batch.dropout_seed;
    DomainPass dp = model_.discriminator().Pass(bank, db);
    p.loss_dom = dp.loss;
    for (std::size_t i = 0; i < d_fs.size(); ++i) d_fs[i] += gamma * dp.grad_source[i];
    for (double& v : dp.grad_target.values()) v *= gamma;
    f.Backward(bank, ft_cache, dp.grad_target);
  }
  f.Backward(bank, fs_cache, d_fs);
  p.total = p.loss_or + gamma * (p.loss_ord + p.loss_dom);
  return p;
}

void Trainer::UseOracle(std::vector<int> hidden_target_labels) {
  if (hidden_target_labels.size() != target_.size()) {
    throw std::invalid_argument("oracle labels do not match the target set");
  }
  oracle_target_labels_ = std::move(hidden_target_labels);
}

WeightTable Trainer::Refresh(const ParameterBank& bank, int epoch) const {
  if (uses_oracle()) {
    std::vector<std::int64_t> ids(target_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = target_.id(i);
    RefreshConfig rc{cfg_.EffectiveFilter(), source_->size(), target_.size()};
    return RefreshWeights(OracleComparator::Exact(), ItemSet{nullptr, source_labels_},
                          source_labels_, source_->source_range(),
                          ItemSet{nullptr, oracle_target_labels_}, ids, rc, cfg_.seed, epoch);
  }
  const Tensor es = model_.Embed(bank, source_->features());
  const Tensor et = model_.Embed(bank, target_.features());
  std::vector<std::int64_t> ids(target_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = target_.id(i);
  const ModelComparator cmp(model_.order(), bank);
  RefreshConfig rc{cfg_.EffectiveFilter(), cfg_.refresh_source_sample,
                   cfg_.refresh_target_sample, cfg_.refresh_class_sample};
  return RefreshWeights(cmp, ItemSet{&es, {}}, source_labels_, source_->source_range(),
                        ItemSet{&et, {}}, ids, rc, cfg_.seed, epoch);
}

void Trainer::RunEpoch(TrainState& state) const {
  const int ep = state.epoch;
  const std::size_t nb = BatchesPerEpoch();
  const std::vector<std::string> prefixes =
      cfg_.ablations.use_adaptation ? std::vector<std::string>{}
                                    : std::vector<std::string>{"F/", "G_r/"};
  EpochRecord rec;
  rec.epoch = ep + 1;
  rec.alpha = cfg_.Alpha(ep);
  for (std::size_t b = 0; b < nb; ++b) {
    const IterationBatch batch = DrawBatch(ep, state.iteration, b);
    state.bank.ZeroGrad();
    const LossParts parts = Gradients(state.bank, state.weights, batch);
    if (!Finite(parts)) {
      std::ostringstream msg;
      msg << "non-finite loss at epoch " << ep + 1 << " iteration " << state.iteration
          << " (L_or=" << parts.loss_or << " L_ord=" << parts.loss_ord
          << " L_dom=" << parts.loss_dom << "); source ids:";
      for (std::size_t i : batch.source) msg << ' ' << source_->id(i);
      msg << "; target ids:";
      for (std::size_t i : batch.target) msg << ' ' << target_.id(i);
      throw TrainingError(msg.str());
    }
    AdamStep(state.bank, cfg_.lr, prefixes);
    ++state.iteration;
    rec.loss_or += parts.loss_or;
    rec.loss_ord += parts.loss_ord;
    rec.loss_dom += parts.loss_dom;
    rec.loss_total += parts.total;
  }
  const double inv = 1.0 / static_cast<double>(nb);
  rec.loss_or *= inv;
  rec.loss_ord *= inv;
  rec.loss_dom *= inv;
  rec.loss_total *= inv;
  state.epoch = ep + 1;
  if (cfg_.ablations.use_adaptation) state.weights = Refresh(state.bank, state.epoch);
  const WeightSummary ws = Summarize(state.weights);
  rec.mean_target_weight = ws.mean_target_weight;
  rec.private_fraction = ws.private_fraction;
  rec.private_source_classes = ws.private_source_classes;
  rec.weight_histogram = ws.histogram;
  rec.bias_violations = model_.regressor().BiasOrderViolations(state.bank);
  ORUDA_LOG(Info) << "epoch " << rec.epoch << " alpha=" << rec.alpha
                  << " L_or=" << rec.loss_or << " L_ord=" << rec.loss_ord
                  << " L_dom=" << rec.loss_dom
                  << " private_fraction=" << rec.private_fraction;
  state.history.push_back(std::move(rec));
}

void Trainer::Run(TrainState& state) const {
  while (state.epoch < cfg_.epochs) RunEpoch(state);
}

TrainState Train(const Dataset& source, const Dataset& target, const TrainConfig& cfg) {
  const Trainer trainer(source, target, cfg);
  TrainState state = trainer.InitialState();
  trainer.Run(state);
  return state;
}

namespace {

constexpr const char* kCheckpointHeader = "#oruda-checkpoint v1";

nlohmann::json ToJson(const EpochRecord& r) {
  return {{"epoch", r.epoch},
          {"alpha", r.alpha},
          {"loss_or", r.loss_or},
          {"loss_ord", r.loss_ord},
          {"loss_dom", r.loss_dom},
          {"loss_total", r.loss_total},
          {"mean_target_weight", r.mean_target_weight},
          {"private_fraction", r.private_fraction},
          {"private_source_classes", r.private_source_classes},
          {"bias_violations", r.bias_violations},
          {"weight_histogram", r.weight_histogram}};
}

EpochRecord RecordFromJson(const nlohmann::json& j) {
  EpochRecord r;
  r.epoch = j.at("epoch").get<int>();
  r.alpha = j.at("alpha").get<double>();
  r.loss_or = j.at("loss_or").get<double>();
  r.loss_ord = j.at("loss_ord").get<double>();
  r.loss_dom = j.at("loss_dom").get<double>();
  r.loss_total = j.at("loss_total").get<double>();
  r.mean_target_weight = j.at("mean_target_weight").get<double>();
  r.private_fraction = j.at("private_fraction").get<double>();
  r.private_source_classes = j.at("private_source_classes").get<std::size_t>();
  r.bias_violations = j.at("bias_violations").get<std::size_t>();
  r.weight_histogram = j.at("weight_histogram").get<std::vector<std::size_t>>();
  return r;
}

// JSON object keys must be strings; class maps are stored as pair lists.
nlohmann::json MapToJson(const std::map<int, double>& m) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [k, v] : m) a.push_back({k, v});
  return a;
}

std::map<int, double> MapFromJson(const nlohmann::json& a) {
  std::map<int, double> m;
  for (const auto& e : a) m[e.at(0).get<int>()] = e.at(1).get<double>();
  return m;
}

}  // namespace

std::string FormatCheckpoint(const TrainState& state) {
  nlohmann::json j;
  j["epoch"] = state.epoch;
  j["iteration"] = state.iteration;
  j["weights"] = {{"epoch_stamp", state.weights.epoch_stamp},
                  {"target_ids", state.weights.target_ids},
                  {"target_weights", state.weights.target_weights},
                  {"target_precedence", state.weights.target_precedence},
                  {"source_class_weights", MapToJson(state.weights.source_class_weights)},
                  {"source_class_precedence",
                   MapToJson(state.weights.source_class_precedence)}};
  nlohmann::json h = nlohmann::json::array();
  for (const auto& r : state.history) h.push_back(ToJson(r));
  j["history"] = h;
  return std::string(kCheckpointHeader) + "\n" + j.dump() + "\n" + FormatParams(state.bank);
}

TrainState ParseCheckpoint(const std::string& text) {
  const auto first = text.find('\n');
  if (first == std::string::npos || text.substr(0, first) != kCheckpointHeader) {
    throw std::runtime_error("not an oruda checkpoint");
  }
  const auto second = text.find('\n', first + 1);
  if (second == std::string::npos) throw std::runtime_error("truncated checkpoint");
  TrainState s;
  try {
    const auto j = nlohmann::json::parse(text.substr(first + 1, second - first - 1));
    s.epoch = j.at("epoch").get<int>();
    s.iteration = j.at("iteration").get<std::uint64_t>();
    const auto& w = j.at("weights");
    s.weights.epoch_stamp = w.at("epoch_stamp").get<int>();
    s.weights.target_ids = w.at("target_ids").get<std::vector<std::int64_t>>();
    s.weights.target_weights = w.at("target_weights").get<std::vector<double>>();
    s.weights.target_precedence = w.at("target_precedence").get<std::vector<double>>();
    s.weights.source_class_weights = MapFromJson(w.at("source_class_weights"));
    s.weights.source_class_precedence = MapFromJson(w.at("source_class_precedence"));
    for (const auto& r : j.at("history")) s.history.push_back(RecordFromJson(r));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed checkpoint: ") + e.what());
  }
  s.bank = ParseParams(text.substr(second + 1));
  return s;
}

void SaveCheckpoint(const TrainState& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << FormatCheckpoint(state);
  if (!out) throw std::runtime_error("write failed: " + path);
}

TrainState LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseCheckpoint(ss.str());
}

std::string FormatHistory(const std::vector<EpochRecord>& history) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& r : history) {
    out << "epoch=" << r.epoch << " alpha=" << r.alpha << " loss_or=" << r.loss_or
        << " loss_ord=" << r.loss_ord << " loss_dom=" << r.loss_dom
        << " loss_total=" << r.loss_total << " mean_target_weight=" << r.mean_target_weight
        << " private_fraction=" << r.private_fraction
        << " private_source_classes=" << r.private_source_classes
        << " bias_violations=" << r.bias_violations << '\n';
  }
  return out.str();
}

}  // namespace oruda
