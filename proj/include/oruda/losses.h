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

#ifndef ORUDA_LOSSES_H_
#define ORUDA_LOSSES_H_

#include <algorithm>
#include <cmath>

namespace oruda {

// Probabilities are clamped to [kProbFloor, 1 - kProbFloor] before logs.
inline constexpr double kProbFloor = 1e-12;

inline double ClampProb(double p) {
  return std::clamp(p, kProbFloor, 1.0 - kProbFloor);
}

inline double SafeLog(double p) { return std::log(ClampProb(p)); }

// d/dp log(clamp(p)); zero where the clamp is active.
inline double SafeLogGrad(double p) {
  if (p < kProbFloor || p > 1.0 - kProbFloor) return 0.0;
  return 1.0 / p;
}

// -[y log p + (1 - y) log(1 - p)] for a soft or hard target y in [0, 1].
inline double BinaryCrossEntropy(double p, double y) {
  return -(y * SafeLog(p) + (1.0 - y) * SafeLog(1.0 - p));
}

inline double BinaryCrossEntropyGrad(double p, double y) {
  return -(y * SafeLogGrad(p) - (1.0 - y) * SafeLogGrad(1.0 - p));
}

inline double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace oruda

#endif  // ORUDA_LOSSES_H_
