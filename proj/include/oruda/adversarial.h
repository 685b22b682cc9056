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

#ifndef ORUDA_ADVERSARIAL_H_
#define ORUDA_ADVERSARIAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oruda/network.h"

namespace oruda {

// G_d: dense(hidden)-relu-dropout-dense(hidden)-relu-dropout-dense(1)-sigmoid.
// The output is read as p(source).
NetworkSpec DiscriminatorSpec(std::size_t feature_dim, std::size_t hidden = 1024,
                              double dropout = 0.5);

struct DomainLossResult {
  double loss = 0.0;
  std::vector<double> grad_source;  // d loss / d d_s
  std::vector<double> grad_target;  // d loss / d d_t
};

// L_dom = mean_s w_s log d_s + mean_t w_t log(1 - d_t), logs clamped.
// This is the discriminator's log-likelihood: G_d ascends it, F descends it.
DomainLossResult DomainLoss(std::span<const double> d_source,
                            std::span<const double> d_target,
                            std::span<const double> w_source,
                            std::span<const double> w_target);

// Embedded features of one source batch and one target batch with their
// commonness weights.
struct DomainBatch {
  Tensor source;
  Tensor target;
  std::vector<double> w_source;
  std::vector<double> w_target;
  std::uint64_t dropout_seed = 0;
};

struct DomainPass {
  double loss = 0.0;
  Tensor grad_source;  // d L_dom / d source features
  Tensor grad_target;  // d L_dom / d target features
};

class Discriminator {
 public:
  Discriminator() = default;
  Discriminator(std::string name, std::size_t feature_dim,
                std::size_t hidden = 1024, double dropout = 0.5);

  const Network& network() const { return net_; }
  const std::string& name() const { return net_.name(); }
  void InitParams(ParameterBank& bank, Rng& rng) const { net_.InitParams(bank, rng); }

  // n x 1 probabilities of "source".
  Tensor Forward(const ParameterBank& bank, const Tensor& features, Mode mode,
                 std::uint64_t dropout_seed = 0,
                 ForwardCache* cache = nullptr) const;

  // One train-mode pass over the joint batch. Adds -d L_dom / d theta_d into
  // the G_d gradients, so a descent step on them ascends L_dom, and returns
  // the gradient of L_dom with respect to both feature batches.
  DomainPass Pass(ParameterBank& bank, const DomainBatch& batch) const;

  // Zeroes G_d gradients, runs Pass and applies one Adam step to G_d only.
  // Returns L_dom before the step.
  double DiscriminatorStep(ParameterBank& bank, const DomainBatch& batch,
                           double lr) const;

  // Feature gradients F should descend: d L_dom / d f for both batches.
  // G_d gradients in the bank are left untouched.
  DomainPass ConfusionGradients(const ParameterBank& bank,
                                const DomainBatch& batch) const;

  // L_dom of the batch under the same dropout draw, no gradients.
  double Evaluate(const ParameterBank& bank, const DomainBatch& batch) const;

 private:
  Network net_;
};

}  // namespace oruda

#endif  // ORUDA_ADVERSARIAL_H_
