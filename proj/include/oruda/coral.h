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

#ifndef ORUDA_CORAL_H_
#define ORUDA_CORAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oruda/labelspace.h"
#include "oruda/network.h"

namespace oruda {

// Output layer variants of the ordinal regressor.
//  kCoral:       one weight vector shared by all m-1 threshold tasks plus
//                m-1 biases (rank consistent when biases are sorted).
//  kIndependent: a separate weight vector per threshold task.
//  kSoftmax:     plain m-way classification with cross entropy.
enum class HeadKind { kCoral, kIndependent, kSoftmax };
std::string ToString(HeadKind k);
HeadKind ParseHeadKind(const std::string& s);

// Extended binary label: bit k (0-based) is 1 iff y > range.lo + k.
std::vector<std::uint8_t> EncodeExtended(int y, ClassRange range);

// range.lo + number of threshold probabilities above 0.5.
int DecodeCoral(std::span<const double> probs, ClassRange range);

// Sum over thresholds of clamped binary cross entropy, uniform task weights.
double CoralLoss(std::span<const double> probs,
                 std::span<const std::uint8_t> extended_label);

struct OrdinalHeadSpec {
  std::size_t input_dim = 0;
  std::size_t hidden = 512;
  ClassRange range;
  HeadKind kind = HeadKind::kCoral;
};

struct OrdinalHeadCache {
  ForwardCache trunk;
  Tensor hidden;  // trunk output
  Tensor probs;
  ForwardCache out;  // kIndependent / kSoftmax output layer
};

// Trunk (dense-relu-dense-relu) followed by the selected output layer.
class OrdinalHead {
 public:
  OrdinalHead() = default;
  OrdinalHead(std::string name, OrdinalHeadSpec spec);

  const OrdinalHeadSpec& spec() const { return spec_; }
  const std::string& name() const { return name_; }
  std::size_t OutputWidth() const;
  std::string SharedWeightName() const { return name_ + "/coral/w"; }
  std::string ThresholdBiasName() const { return name_ + "/coral/b"; }

  // Coral biases start at the uniform-prior log-odds, sorted non-increasing.
  void InitParams(ParameterBank& bank, Rng& rng) const;

  // n x (m-1) threshold probabilities, or n x m class probabilities for
  // kSoftmax.
  Tensor Forward(const ParameterBank& bank, const Tensor& features,
                 OrdinalHeadCache* cache = nullptr) const;
  Tensor Backward(ParameterBank& bank, const OrdinalHeadCache& cache,
                  const Tensor& grad_probs) const;

  // Batch-mean loss; fills d(loss)/d(probs) when `grad` is non-null.
  double Loss(const Tensor& probs, std::span<const int> labels,
              Tensor* grad = nullptr) const;
  std::vector<int> Predict(const Tensor& probs) const;

  // Pairs k with bias[k] < bias[k+1]; zero means the coral biases are
  // sorted non-increasing.
  std::size_t BiasOrderViolations(const ParameterBank& bank) const;

 private:
  std::string name_;
  OrdinalHeadSpec spec_;
  Network trunk_;
  Network out_;  // unused for kCoral
};

}  // namespace oruda

#endif  // ORUDA_CORAL_H_
