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

#include "oruda/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace oruda {

namespace {

void CheckSizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("metric inputs differ in length");
}

double Rate(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MaeResult ComputeMaskedMae(std::span<const int> predictions,
                           std::span<const int> truths,
                           std::span<const std::uint8_t> mask) {
  CheckSizes(predictions.size(), truths.size());
  CheckSizes(predictions.size(), mask.size());
  MaeResult r;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!mask[i]) {
      ++r.excluded;
      continue;
    }
    const double e = std::abs(predictions[i] - truths[i]);
    r.mae += e;
    r.mse += e * e;
    ++r.count;
  }
  if (r.count == 0) throw std::invalid_argument("no instances selected; MAE undefined");
  r.mae /= static_cast<double>(r.count);
  r.mse /= static_cast<double>(r.count);
  return r;
}

MaeResult ComputeMae(std::span<const int> predictions, std::span<const int> truths,
                     std::span<const PrivateVerdict> verdicts) {
  CheckSizes(predictions.size(), verdicts.size());
  std::vector<std::uint8_t> common(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) common[i] = !verdicts[i].is_private;
  return ComputeMaskedMae(predictions, truths, common);
}

double ComputeEmae(std::span<const int> predictions, std::span<const int> truths) {
  CheckSizes(predictions.size(), truths.size());
  if (predictions.empty()) throw std::invalid_argument("e-MAE of an empty set");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    sum += std::abs(predictions[i] - truths[i]);
  }
  return sum / static_cast<double>(predictions.size());
}

DetectionMetrics ComputeDetection(std::span<const PrivateVerdict> verdicts,
                                  std::span<const int> hidden_labels,
                                  const ScenarioSpec& scenario) {
  CheckSizes(verdicts.size(), hidden_labels.size());
  DetectionMetrics d;
  std::size_t side_correct = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const bool truly_private = !scenario.IsCommon(hidden_labels[i]);
    if (verdicts[i].is_private && truly_private) {
      ++d.tp;
      if (verdicts[i].segment == scenario.TargetSide(hidden_labels[i])) ++side_correct;
    } else if (verdicts[i].is_private) {
      ++d.fp;
    } else if (truly_private) {
      ++d.fn;
    } else {
      ++d.tn;
    }
  }
  d.precision = Rate(d.tp, d.tp + d.fp);
  d.recall = Rate(d.tp, d.tp + d.fn);
  d.specificity = Rate(d.tn, d.tn + d.fp);
  d.balanced_accuracy = 0.5 * (d.recall + d.specificity);
  d.segment_accuracy = Rate(side_correct, d.tp);
  return d;
}

double SourceClassAccuracy(std::span<const int> marked_private,
                           const ScenarioSpec& scenario) {
  std::size_t correct = 0;
  for (int y = scenario.source.lo; y <= scenario.source.hi; ++y) {
    const bool marked =
        std::find(marked_private.begin(), marked_private.end(), y) != marked_private.end();
    if (marked == !scenario.IsCommon(y)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(scenario.source.count());
}

double KendallTauB(std::span<const double> x, std::span<const double> y) {
  CheckSizes(x.size(), y.size());
  const std::size_t n = x.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0.0) ++ties_x;
      if (dy == 0.0) ++ties_y;
      if (dx == 0.0 || dy == 0.0) continue;
      if ((dx > 0.0) == (dy > 0.0)) ++concordant; else ++discordant;
    }
  }
  const long long pairs = static_cast<long long>(n) * static_cast<long long>(n - (n > 0)) / 2;
  const double den = std::sqrt(static_cast<double>(pairs - ties_x) *
                               static_cast<double>(pairs - ties_y));
  if (den == 0.0) return 0.0;
  return static_cast<double>(concordant - discordant) / den;
}

}  // namespace oruda
