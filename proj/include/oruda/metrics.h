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

#ifndef ORUDA_METRICS_H_
#define ORUDA_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "oruda/labelspace.h"
#include "oruda/ranking.h"

namespace oruda {

struct MaeResult {
  double mae = 0.0;
  double mse = 0.0;  // squared-error companion column
  std::size_t count = 0;
  std::size_t excluded = 0;  // instances marked private
};

// Mean absolute error over instances marked common. Throws
// std::invalid_argument when no instance is marked common.
MaeResult ComputeMae(std::span<const int> predictions, std::span<const int> truths,
                     std::span<const PrivateVerdict> verdicts);
// Mean absolute error over all instances.
double ComputeEmae(std::span<const int> predictions, std::span<const int> truths);
// Mean absolute error over the instances selected by `mask`.
MaeResult ComputeMaskedMae(std::span<const int> predictions,
                           std::span<const int> truths,
                           std::span<const std::uint8_t> mask);

// Target-private detection against hidden labels. Rates with an empty
// denominator are reported as 1.
struct DetectionMetrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double specificity = 1.0;
  double balanced_accuracy = 1.0;
  double segment_accuracy = 1.0;  // correct side among true positives
};
DetectionMetrics ComputeDetection(std::span<const PrivateVerdict> verdicts,
                                  std::span<const int> hidden_labels,
                                  const ScenarioSpec& scenario);

// Fraction of source classes whose common/private marking is correct.
double SourceClassAccuracy(std::span<const int> marked_private,
                           const ScenarioSpec& scenario);

// Kendall tau-b between two score vectors; 0 when either is constant.
double KendallTauB(std::span<const double> x, std::span<const double> y);

}  // namespace oruda

#endif  // ORUDA_METRICS_H_
