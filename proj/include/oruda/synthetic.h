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

#ifndef ORUDA_SYNTHETIC_H_
#define ORUDA_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "oruda/dataset.h"
#include "oruda/labelspace.h"
#include "oruda/tensor.h"

namespace oruda {

// Two-domain ordinal data on a shared one-dimensional curve. Each domain
// sees the curve through its own affine map, so the label order is the same
// in both domains while the raw features differ.
struct SyntheticSpec {
  std::size_t feature_dim = 16;
  double noise_sigma = 0.05;
  // Per-domain instance counts; 0 means samples_per_class times the number
  // of classes in that domain.
  std::size_t samples_per_class = 60;
  std::size_t source_count = 0;
  std::size_t target_count = 0;
  std::uint64_t domain_shift_seed = 101;
  std::uint64_t curve_seed = 202;
  std::uint64_t noise_seed = 303;
  // Largest Givens angle (radians) of the per-domain rotation.
  double rotation_scale = 0.3;
  // Standard deviation of the per-domain translation.
  double translation_scale = 0.15;
  // Scale range [1/sqrt(c), sqrt(c)] bounding the condition number by c.
  double max_condition = 3.0;
  // Use the source map for both domains (no input shift).
  bool identical_maps = false;
  std::size_t harmonics = 4;
  // Standard deviation of the first harmonic's amplitude on coordinates
  // 1..D-1; harmonic k is damped by 1 / (k + 1).
  double harmonic_amplitude = 0.5;
  // Standard deviation of the linear trend on coordinates 1..D-1.
  double trend_scale = 0.5;
};

struct AffineMap {
  Tensor linear;               // D x D
  std::vector<double> offset;  // D
};

class SyntheticGenerator {
 public:
  SyntheticGenerator(const ScenarioSpec& scenario, const SyntheticSpec& spec);

  // Point on the shared curve for a normalised position t in [0, 1].
  std::vector<double> Curve(double t) const;
  // Normalised position of a label over the union of both label ranges.
  double Position(int label) const;
  // Noise-free features of a label in one domain.
  std::vector<double> Embed(int label, Domain domain) const;
  const AffineMap& Map(Domain domain) const {
    return domain == Domain::kSource ? source_map_ : target_map_;
  }

  // Source and target datasets; target labels are hidden evaluation labels.
  std::pair<Dataset, Dataset> Generate() const;

 private:
  Dataset GenerateDomain(Domain domain, std::size_t count,
                         std::int64_t first_id) const;

  ScenarioSpec scenario_;
  SyntheticSpec spec_;
  Tensor amplitude_;  // D x harmonics
  Tensor phase_;      // D x harmonics
  std::vector<double> trend_;  // linear drift per coordinate; [0] dominates
  AffineMap source_map_;
  AffineMap target_map_;
};

// Throws std::invalid_argument for negative noise or feature_dim < 2.
std::pair<Dataset, Dataset> GenerateSynthetic(const ScenarioSpec& scenario,
                                              const SyntheticSpec& spec);

}  // namespace oruda

#endif  // ORUDA_SYNTHETIC_H_
