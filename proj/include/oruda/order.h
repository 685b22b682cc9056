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

#ifndef ORUDA_ORDER_H_
#define ORUDA_ORDER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "oruda/labelspace.h"
#include "oruda/network.h"

namespace oruda {

struct OrderConfig {
  int tau = 3;
};

// 1 iff y1 <= y2 + tau, i.e. the first instance precedes the second.
int OrderLabel(int y1, int y2, int tau);

// Pair-sampling easiness schedule. alpha rises from `floor` at epoch 0
// towards 1 with the given time constant:
//   alpha(ep) = min(1, floor + (1 - floor) * (1 - exp(-ep / time_constant))).
struct CurriculumSchedule {
  double floor = 0.05;
  double time_constant = 3.0;
};
double CurriculumAlpha(double epoch, const CurriculumSchedule& schedule);

struct LabeledPair {
  std::size_t first = 0;
  std::size_t second = 0;
  int label = 0;
};

// Draws source pairs with class positions u1 ~ Beta(alpha, 1) and
// u2 ~ Beta(1, alpha): small alpha favours pairs far apart in label.
class PairSampler {
 public:
  // Throws std::invalid_argument with fewer than two instances.
  PairSampler(std::span<const int> labels, ClassRange range);

  std::vector<LabeledPair> Sample(double alpha, std::size_t n_pairs, int tau,
                                  std::uint64_t seed) const;

  // Class reached from a position u in [0, 1].
  int ClassAt(double u) const;

 private:
  // An instance of `label`, or of the nearest populated class.
  std::size_t PickInstance(int label, Rng& rng) const;

  std::vector<int> labels_;
  ClassRange range_;
  std::vector<std::vector<std::size_t>> by_class_;
};

std::vector<LabeledPair> SamplePairs(std::span<const int> labels,
                                     ClassRange range, double alpha,
                                     std::size_t n_pairs, int tau,
                                     std::uint64_t seed);

// Clamped binary cross entropy of p(x1 < x2) against the order label.
double OrderLoss(double prob, int label);

struct OrderHeadCache {
  ForwardCache net;
};

// G_o: dense-relu-dense-relu-dense(1)-sigmoid on the feature difference
// f1 - f2. Output is p(x1 precedes x2).
class OrderHead {
 public:
  OrderHead() = default;
  OrderHead(std::string name, std::size_t feature_dim, std::size_t hidden);

  const Network& network() const { return net_; }
  void InitParams(ParameterBank& bank, Rng& rng) const { net_.InitParams(bank, rng); }

  // n x 1 probabilities for row-aligned feature batches.
  Tensor Forward(const ParameterBank& bank, const Tensor& first,
                 const Tensor& second, OrderHeadCache* cache = nullptr) const;
  // Gradient with respect to the difference f1 - f2.
  Tensor Backward(ParameterBank& bank, const OrderHeadCache& cache,
                  const Tensor& grad_probs) const;

  // Batch-mean order loss; fills d(loss)/d(prob).
  static double Loss(const Tensor& probs, std::span<const int> labels,
                     Tensor* grad = nullptr);

 private:
  Network net_;
};

}  // namespace oruda

#endif  // ORUDA_ORDER_H_
