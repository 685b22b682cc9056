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

#include "oruda/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "oruda/rng.h"

namespace oruda {

void Merge(GradCheckResult& into, const GradCheckResult& other) {
  if (into.worst.empty() || other.max_rel_error > into.max_rel_error) {
    into.max_rel_error = other.max_rel_error;
    into.worst = other.worst;
  }
  into.checked += other.checked;
  into.skipped += other.skipped;
}

GradCheckResult CheckGradient(std::span<double> x,
                              std::span<const double> analytic,
                              const LossFn& loss, const PatternFn& pattern,
                              const GradCheckOptions& options,
                              const std::string& label) {
  GradCheckResult result;
  result.worst = label;
  std::vector<std::size_t> coords(x.size());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  if (coords.size() > options.max_coords_per_tensor) {
    Rng rng(DeriveSeed(options.seed, Stream::kInit, std::hash<std::string>{}(label)));
    auto perm = Permutation(coords.size(), rng);
    perm.resize(options.max_coords_per_tensor);
    coords = std::move(perm);
  }
  for (std::size_t i : coords) {
    const double saved = x[i];
    x[i] = saved + options.epsilon;
    const double up = loss();
    const auto pattern_up = pattern ? pattern() : std::vector<std::uint8_t>{};
    x[i] = saved - options.epsilon;
    const double down = loss();
    const auto pattern_down = pattern ? pattern() : std::vector<std::uint8_t>{};
    x[i] = saved;
    if (pattern && pattern_up != pattern_down) {
      ++result.skipped;
      continue;
    }
    const double numeric = (up - down) / (2.0 * options.epsilon);
    const double scale =
        std::max({std::abs(numeric), std::abs(analytic[i]), options.scale_floor});
    const double rel = std::abs(numeric - analytic[i]) / scale;
    result.max_rel_error = std::max(result.max_rel_error, rel);
    ++result.checked;
  }
  return result;
}

GradCheckResult FiniteDiffCheck(ParameterBank& bank,
                                const std::vector<std::string>& names,
                                const LossFn& loss,
                                const std::function<void()>& analytic,
                                const PatternFn& pattern,
                                const GradCheckOptions& options) {
  analytic();
  GradCheckResult total;
  for (const auto& name : names) {
    Parameter& p = bank.at(name);
    const std::vector<double> grad(p.grad.values().begin(), p.grad.values().end());
    Merge(total, CheckGradient(p.value.values(), grad, loss, pattern, options, name));
  }
  return total;
}

}  // namespace oruda
