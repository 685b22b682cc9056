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

#ifndef ORUDA_GRADCHECK_H_
#define ORUDA_GRADCHECK_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oruda/params.h"

namespace oruda {

struct GradCheckOptions {
  double epsilon = 1e-5;
  // Coordinates checked per tensor; larger tensors are subsampled.
  std::size_t max_coords_per_tensor = 48;
  std::uint64_t seed = 0;
  // Denominator floor: gradients smaller than this are compared absolutely.
  double scale_floor = 1e-6;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst;  // tensor holding the worst coordinate
  std::size_t checked = 0;
  // Coordinates whose perturbation crossed a rectifier kink.
  std::size_t skipped = 0;
};

using LossFn = std::function<double()>;
using PatternFn = std::function<std::vector<std::uint8_t>()>;

// Central differences on the coordinates of `x` against `analytic`. `loss`
// must read `x` through whatever it captured. When `pattern` is given, a
// coordinate is skipped if the pattern differs between x+eps and x-eps.
GradCheckResult CheckGradient(std::span<double> x,
                              std::span<const double> analytic,
                              const LossFn& loss, const PatternFn& pattern,
                              const GradCheckOptions& options,
                              const std::string& label = "input");

// Checks every named parameter. `analytic` must zero the bank's gradients
// and accumulate d(loss)/d(param) into them.
GradCheckResult FiniteDiffCheck(ParameterBank& bank,
                                const std::vector<std::string>& names,
                                const LossFn& loss,
                                const std::function<void()>& analytic,
                                const PatternFn& pattern = {},
                                const GradCheckOptions& options = {});

void Merge(GradCheckResult& into, const GradCheckResult& other);

}  // namespace oruda

#endif  // ORUDA_GRADCHECK_H_
