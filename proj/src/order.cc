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

#include "oruda/order.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oruda/losses.h"

namespace oruda {

int OrderLabel(int y1, int y2, int tau) { return y1 <= y2 + tau ? 1 : 0; }

double CurriculumAlpha(double epoch, const CurriculumSchedule& schedule) {
  if (!(schedule.floor > 0.0 && schedule.floor <= 1.0) ||
      !(schedule.time_constant > 0.0)) {
    throw std::invalid_argument("curriculum: need floor in (0,1], time constant > 0");
  }
  const double ep = std::max(0.0, epoch);
  const double alpha = schedule.floor + (1.0 - schedule.floor) *
                                            (1.0 - std::exp(-ep / schedule.time_constant));
  return std::min(1.0, alpha);
}

PairSampler::PairSampler(std::span<const int> labels, ClassRange range)
    : labels_(labels.begin(), labels.end()),
      range_(range),
      by_class_(static_cast<std::size_t>(range.count())) {
  if (labels_.size() < 2) {
    throw std::invalid_argument("pair sampling needs at least two instances");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!range_.contains(labels_[i])) {
      throw std::invalid_argument("pair sampling: label outside range");
    }
    by_class_[static_cast<std::size_t>(labels_[i] - range_.lo)].push_back(i);
  }
}

int PairSampler::ClassAt(double u) const {
  const int offset =
      static_cast<int>(std::lround(u * static_cast<double>(range_.count() - 1)));
  return range_.lo + std::clamp(offset, 0, range_.count() - 1);
}

std::size_t PairSampler::PickInstance(int label, Rng& rng) const {
  const int m = range_.count();
  const int c = label - range_.lo;
  for (int d = 0; d < m; ++d) {
    for (int candidate : {c - d, c + d}) {
      if (candidate < 0 || candidate >= m) continue;
      const auto& members = by_class_[static_cast<std::size_t>(candidate)];
      if (!members.empty()) return members[UniformIndex(rng, members.size())];
    }
  }
  throw std::logic_error("pair sampling: no populated class");
}

std::vector<LabeledPair> PairSampler::Sample(double alpha, std::size_t n_pairs,
                                             int tau, std::uint64_t seed) const {
  if (n_pairs == 0) throw std::invalid_argument("pair sampling: n_pairs == 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("pair sampling: alpha <= 0");
  Rng rng(seed);
  const double inv_alpha = 1.0 / alpha;
  std::vector<LabeledPair> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t n = 0; n < n_pairs; ++n) {
    // Inverse CDFs: Beta(a,1) has F(u) = u^a, Beta(1,a) has F(u) = 1-(1-u)^a.
    const double u1 = std::pow(Uniform01(rng), inv_alpha);
    const double u2 = 1.0 - std::pow(Uniform01(rng), inv_alpha);
    std::size_t i = PickInstance(ClassAt(u1), rng);
    std::size_t j = PickInstance(ClassAt(u2), rng);
    if (Uniform01(rng) < 0.5) std::swap(i, j);
    pairs.push_back({i, j, OrderLabel(labels_[i], labels_[j], tau)});
  }
  return pairs;
}

std::vector<LabeledPair> SamplePairs(std::span<const int> labels,
                                     ClassRange range, double alpha,
                                     std::size_t n_pairs, int tau,
                                     std::uint64_t seed) {
  return PairSampler(labels, range).Sample(alpha, n_pairs, tau, seed);
}

double OrderLoss(double prob, int label) {
  return BinaryCrossEntropy(prob, static_cast<double>(label));
}

OrderHead::OrderHead(std::string name, std::size_t feature_dim,
                     std::size_t hidden)
    : net_(std::move(name),
           NetworkSpec{{LayerSpec::Dense(feature_dim, hidden), LayerSpec::Relu(),
                        LayerSpec::Dense(hidden, hidden), LayerSpec::Relu(),
                        LayerSpec::Dense(hidden, 1), LayerSpec::Sigmoid()}}) {}

Tensor OrderHead::Forward(const ParameterBank& bank, const Tensor& first,
                          const Tensor& second, OrderHeadCache* cache) const {
  if (!first.SameShape(second)) {
    throw std::invalid_argument("order head: feature batches differ in shape");
  }
  Tensor diff(first.shape());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = first[i] - second[i];
  return net_.Forward(bank, diff, Mode::kEval, 0, cache ? &cache->net : nullptr);
}

Tensor OrderHead::Backward(ParameterBank& bank, const OrderHeadCache& cache,
                           const Tensor& grad_probs) const {
  return net_.Backward(bank, cache.net, grad_probs);
}

double OrderHead::Loss(const Tensor& probs, std::span<const int> labels,
                       Tensor* grad) {
  const std::size_t n = probs.rows();
  if (labels.size() != n) throw std::invalid_argument("order loss: label count");
  if (grad) *grad = Tensor(probs.shape());
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += OrderLoss(probs[i], labels[i]);
    if (grad) (*grad)[i] = BinaryCrossEntropyGrad(probs[i], labels[i]) * inv_n;
  }
  return total * inv_n;
}

}  // namespace oruda
