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

#include "oruda/coral.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oruda/kernels.h"
#include "oruda/losses.h"

namespace oruda {

using kernels::Trans;

std::string ToString(HeadKind k) {
  switch (k) {
    case HeadKind::kCoral: return "coral";
    case HeadKind::kIndependent: return "independent";
    default: return "softmax";
  }
}

HeadKind ParseHeadKind(const std::string& s) {
  if (s == "coral") return HeadKind::kCoral;
  if (s == "independent") return HeadKind::kIndependent;
  if (s == "softmax") return HeadKind::kSoftmax;
  throw std::invalid_argument("unknown head kind '" + s + "'");
}

std::vector<std::uint8_t> EncodeExtended(int y, ClassRange range) {
  if (!range.contains(y)) {
    throw std::invalid_argument("label " + std::to_string(y) + " outside " +
                                ToString(range));
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(range.count() - 1));
  for (std::size_t k = 0; k < bits.size(); ++k) {
    bits[k] = y > range.lo + static_cast<int>(k) ? 1 : 0;
  }
  return bits;
}

int DecodeCoral(std::span<const double> probs, ClassRange range) {
  const auto q = std::count_if(probs.begin(), probs.end(),
                               [](double p) { return p > 0.5; });
  return range.lo + static_cast<int>(q);
}

double CoralLoss(std::span<const double> probs,
                 std::span<const std::uint8_t> extended_label) {
  if (probs.size() != extended_label.size()) {
    throw std::invalid_argument("CoralLoss: size mismatch");
  }
  double loss = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    loss += BinaryCrossEntropy(probs[k], extended_label[k]);
  }
  return loss;
}

OrdinalHead::OrdinalHead(std::string name, OrdinalHeadSpec spec)
    : name_(std::move(name)), spec_(spec) {
  if (spec_.range.count() < 2) {
    throw std::invalid_argument("ordinal head needs at least two classes");
  }
  trunk_ = Network(name_ + "/trunk",
                   NetworkSpec{{LayerSpec::Dense(spec_.input_dim, spec_.hidden),
                                LayerSpec::Relu(),
                                LayerSpec::Dense(spec_.hidden, spec_.hidden),
                                LayerSpec::Relu()}});
  const auto m = static_cast<std::size_t>(spec_.range.count());
  if (spec_.kind == HeadKind::kIndependent) {
    out_ = Network(name_ + "/out",
                   NetworkSpec{{LayerSpec::Dense(spec_.hidden, m - 1),
                                LayerSpec::Sigmoid()}});
  } else if (spec_.kind == HeadKind::kSoftmax) {
    out_ = Network(name_ + "/out",
                   NetworkSpec{{LayerSpec::Dense(spec_.hidden, m)}});
  }
}

std::size_t OrdinalHead::OutputWidth() const {
  const auto m = static_cast<std::size_t>(spec_.range.count());
  return spec_.kind == HeadKind::kSoftmax ? m : m - 1;
}

void OrdinalHead::InitParams(ParameterBank& bank, Rng& rng) const {
  trunk_.InitParams(bank, rng);
  if (spec_.kind != HeadKind::kCoral) {
    out_.InitParams(bank, rng);
    return;
  }
  const std::size_t k = OutputWidth();
  const double limit = std::sqrt(6.0 / static_cast<double>(spec_.hidden + 1));
  Tensor w = Tensor::Vector(spec_.hidden);
  for (double& v : w.values()) v = (2.0 * Uniform01(rng) - 1.0) * limit;
  // Threshold i starts at the log-odds of y > lo + i under a uniform label
  // prior: sorted, and matching the prior when w . h = 0.
  Tensor b = Tensor::Vector(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double above = static_cast<double>(k - i);
    b[i] = std::log(above / static_cast<double>(i + 1));
  }
  bank.Add(SharedWeightName(), std::move(w));
  bank.Add(ThresholdBiasName(), std::move(b));
}

Tensor OrdinalHead::Forward(const ParameterBank& bank, const Tensor& features,
                            OrdinalHeadCache* cache) const {
  Tensor h = trunk_.Forward(bank, features, Mode::kEval, 0,
                            cache ? &cache->trunk : nullptr);
  const std::size_t n = h.rows();
  Tensor probs;
  switch (spec_.kind) {
    case HeadKind::kCoral: {
      const Tensor& w = bank.at(SharedWeightName()).value;
      const Tensor& b = bank.at(ThresholdBiasName()).value;
      const std::size_t k = b.size();
      Tensor score = Tensor::Matrix(n, 1);
      kernels::Gemm(Trans::kNo, Trans::kNo, n, 1, spec_.hidden, 1.0, h.data(),
                    spec_.hidden, w.data(), 1, 0.0, score.data(), 1);
      probs = Tensor::Matrix(n, k);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          probs.at(i, j) = Logistic(score[i] + b[j]);
        }
      }
      break;
    }
    case HeadKind::kIndependent:
      probs = out_.Forward(bank, h, Mode::kEval, 0, cache ? &cache->out : nullptr);
      break;
    case HeadKind::kSoftmax: {
      probs = out_.Forward(bank, h, Mode::kEval, 0, cache ? &cache->out : nullptr);
      for (std::size_t i = 0; i < n; ++i) {
        auto row = probs.row(i);
        const double mx = *std::max_element(row.begin(), row.end());
        double sum = 0.0;
        for (double& v : row) sum += (v = std::exp(v - mx));
        for (double& v : row) v /= sum;
      }
      break;
    }
  }
  if (cache) {
    cache->hidden = std::move(h);
    cache->probs = probs;
  }
  return probs;
}

Tensor OrdinalHead::Backward(ParameterBank& bank, const OrdinalHeadCache& cache,
                             const Tensor& grad_probs) const {
  const Tensor& h = cache.hidden;
  const Tensor& p = cache.probs;
  const std::size_t n = h.rows();
  Tensor grad_h;
  switch (spec_.kind) {
    case HeadKind::kCoral: {
      Parameter& w = bank.at(SharedWeightName());
      Parameter& b = bank.at(ThresholdBiasName());
      const std::size_t k = b.value.size();
      // d loss / d score, summed over the thresholds sharing the score.
      Tensor grad_score = Tensor::Matrix(n, 1);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          const double dz = grad_probs.at(i, j) * p.at(i, j) * (1.0 - p.at(i, j));
          b.grad[j] += dz;
          s += dz;
        }
        grad_score[i] = s;
      }
      kernels::Gemm(Trans::kYes, Trans::kNo, spec_.hidden, 1, n, 1.0, h.data(),
                    spec_.hidden, grad_score.data(), 1, 1.0, w.grad.data(), 1);
      grad_h = Tensor::Matrix(n, spec_.hidden);
      kernels::Gemm(Trans::kNo, Trans::kNo, n, spec_.hidden, 1, 1.0,
                    grad_score.data(), 1, w.value.data(), spec_.hidden, 0.0,
                    grad_h.data(), spec_.hidden);
      break;
    }
    case HeadKind::kIndependent:
      grad_h = out_.Backward(bank, cache.out, grad_probs);
      break;
    case HeadKind::kSoftmax: {
      Tensor grad_logits = Tensor::Matrix(n, p.cols());
      for (std::size_t i = 0; i < n; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) dot += grad_probs.at(i, j) * p.at(i, j);
        for (std::size_t j = 0; j < p.cols(); ++j) {
          grad_logits.at(i, j) = p.at(i, j) * (grad_probs.at(i, j) - dot);
        }
      }
      grad_h = out_.Backward(bank, cache.out, grad_logits);
      break;
    }
  }
  return trunk_.Backward(bank, cache.trunk, grad_h);
}

double OrdinalHead::Loss(const Tensor& probs, std::span<const int> labels,
                         Tensor* grad) const {
  const std::size_t n = probs.rows();
  if (labels.size() != n) throw std::invalid_argument("head loss: label count");
  if (grad) *grad = Tensor(probs.shape());
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = labels[i];
    if (!spec_.range.contains(y)) {
      throw std::invalid_argument("head loss: label " + std::to_string(y) +
                                  " outside " + ToString(spec_.range));
    }
    if (spec_.kind == HeadKind::kSoftmax) {
      const std::size_t c = static_cast<std::size_t>(y - spec_.range.lo);
      total -= SafeLog(probs.at(i, c));
      if (grad) grad->at(i, c) = -SafeLogGrad(probs.at(i, c)) * inv_n;
      continue;
    }
    for (std::size_t k = 0; k < probs.cols(); ++k) {
      const double bit = y > spec_.range.lo + static_cast<int>(k) ? 1.0 : 0.0;
      total += BinaryCrossEntropy(probs.at(i, k), bit);
      if (grad) grad->at(i, k) = BinaryCrossEntropyGrad(probs.at(i, k), bit) * inv_n;
    }
  }
  return total * inv_n;
}

std::vector<int> OrdinalHead::Predict(const Tensor& probs) const {
  std::vector<int> out(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    const auto row = probs.row(i);
    if (spec_.kind == HeadKind::kSoftmax) {
      out[i] = spec_.range.lo +
               static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    } else {
      out[i] = DecodeCoral(row, spec_.range);
    }
  }
  return out;
}

std::size_t OrdinalHead::BiasOrderViolations(const ParameterBank& bank) const {
  if (spec_.kind != HeadKind::kCoral) return 0;
  const Tensor& b = bank.at(ThresholdBiasName()).value;
  std::size_t violations = 0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    if (b[k] < b[k + 1]) ++violations;
  }
  return violations;
}

}  // namespace oruda
