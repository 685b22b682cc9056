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

#include "oruda/adversarial.h"

#include <stdexcept>

#include "oruda/losses.h"

namespace oruda {

NetworkSpec DiscriminatorSpec(std::size_t feature_dim, std::size_t hidden,
                              double dropout) {
  return NetworkSpec{{LayerSpec::Dense(feature_dim, hidden), LayerSpec::Relu(),
                      LayerSpec::Dropout(dropout), LayerSpec::Dense(hidden, hidden),
                      LayerSpec::Relu(), LayerSpec::Dropout(dropout),
                      LayerSpec::Dense(hidden, 1), LayerSpec::Sigmoid()}};
}

DomainLossResult DomainLoss(std::span<const double> d_source,
                            std::span<const double> d_target,
                            std::span<const double> w_source,
                            std::span<const double> w_target) {
  if (d_source.size() != w_source.size() || d_target.size() != w_target.size()) {
    throw std::invalid_argument("domain loss: weights not aligned with batch");
  }
  DomainLossResult r;
  r.grad_source.assign(d_source.size(), 0.0);
  r.grad_target.assign(d_target.size(), 0.0);
  if (!d_source.empty()) {
    const double inv = 1.0 / static_cast<double>(d_source.size());
    for (std::size_t i = 0; i < d_source.size(); ++i) {
      if (w_source[i] == 0.0) continue;
      r.loss += inv * w_source[i] * SafeLog(d_source[i]);
      r.grad_source[i] = inv * w_source[i] * SafeLogGrad(d_source[i]);
    }
  }
  if (!d_target.empty()) {
    const double inv = 1.0 / static_cast<double>(d_target.size());
    for (std::size_t i = 0; i < d_target.size(); ++i) {
      if (w_target[i] == 0.0) continue;
      r.loss += inv * w_target[i] * SafeLog(1.0 - d_target[i]);
      r.grad_target[i] = -inv * w_target[i] * SafeLogGrad(1.0 - d_target[i]);
    }
  }
  return r;
}

Discriminator::Discriminator(std::string name, std::size_t feature_dim,
                             std::size_t hidden, double dropout)
    : net_(std::move(name), DiscriminatorSpec(feature_dim, hidden, dropout)) {}

Tensor Discriminator::Forward(const ParameterBank& bank, const Tensor& features,
                              Mode mode, std::uint64_t dropout_seed,
                              ForwardCache* cache) const {
  return net_.Forward(bank, features, mode, dropout_seed, cache);
}

namespace {

struct JointForward {
  ForwardCache cache;
  DomainLossResult loss;
  std::size_t n_source = 0;
};

JointForward RunJoint(const Network& net, const ParameterBank& bank,
                      const DomainBatch& batch) {
  JointForward j;
  j.n_source = batch.source.rows();
  const Tensor joint = ConcatRows(batch.source, batch.target);
  const Tensor d = net.Forward(bank, joint, Mode::kTrain, batch.dropout_seed, &j.cache);
  const auto probs = d.values();
  j.loss = DomainLoss(probs.first(j.n_source), probs.subspan(j.n_source),
                      batch.w_source, batch.w_target);
  return j;
}

Tensor LossGradient(const JointForward& j, double sign) {
  Tensor g = Tensor::Matrix(j.loss.grad_source.size() + j.loss.grad_target.size(), 1);
  for (std::size_t i = 0; i < j.loss.grad_source.size(); ++i) {
    g[i] = sign * j.loss.grad_source[i];
  }
  for (std::size_t i = 0; i < j.loss.grad_target.size(); ++i) {
    g[j.n_source + i] = sign * j.loss.grad_target[i];
  }
  return g;
}

ParameterBank ScratchCopy(const ParameterBank& bank, const std::string& prefix) {
  ParameterBank scratch;
  for (const auto& name : bank.NamesWithPrefix(prefix)) scratch.Add(name, bank.at(name).value);
  return scratch;
}

DomainPass SplitFeatureGradient(const Tensor& grad_in, double loss,
                                std::size_t n_source, double sign) {
  DomainPass p;
  p.loss = loss;
  Tensor scaled = grad_in;
  for (double& v : scaled.values()) v *= sign;
  p.grad_source = SliceRows(scaled, 0, n_source);
  p.grad_target = SliceRows(scaled, n_source, scaled.rows() - n_source);
  return p;
}

}  // namespace

DomainPass Discriminator::Pass(ParameterBank& bank, const DomainBatch& batch) const {
  const JointForward j = RunJoint(net_, bank, batch);
  // Backpropagating -dL makes the accumulated G_d gradient a descent
  // direction for -L_dom; the returned feature gradient is flipped back.
  const Tensor grad_in = net_.Backward(bank, j.cache, LossGradient(j, -1.0));
  return SplitFeatureGradient(grad_in, j.loss.loss, j.n_source, -1.0);
}

double Discriminator::DiscriminatorStep(ParameterBank& bank,
                                        const DomainBatch& batch, double lr) const {
  bank.ZeroGrad(net_.name() + "/");
  const double loss = Pass(bank, batch).loss;
  AdamStep(bank, lr, {net_.name() + "/"});
  return loss;
}

DomainPass Discriminator::ConfusionGradients(const ParameterBank& bank,
                                             const DomainBatch& batch) const {
  // Backward needs somewhere to accumulate G_d gradients.
  ParameterBank scratch = ScratchCopy(bank, net_.name() + "/");
  const JointForward j = RunJoint(net_, scratch, batch);
  const Tensor grad_in = net_.Backward(scratch, j.cache, LossGradient(j, 1.0));
  return SplitFeatureGradient(grad_in, j.loss.loss, j.n_source, 1.0);
}

double Discriminator::Evaluate(const ParameterBank& bank,
                               const DomainBatch& batch) const {
  return RunJoint(net_, bank, batch).loss.loss;
}

}  // namespace oruda
