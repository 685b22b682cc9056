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

#include "oruda/synthetic.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oruda/rng.h"

namespace oruda {
namespace {

// Coordinate 0 carries the order; its harmonics are damped so that the
// linear drift dominates.
constexpr double kOrderAxisHarmonicScale = 0.1;

// Harmonic k completes (k + 1) / 2 cycles over [0, 1]. Half-integer cycle
// counts keep the curve from closing on itself, so labels below the source
// range do not alias labels at its top.
double Frequency(std::size_t k) {
  return std::numbers::pi * static_cast<double>(k + 1);
}

// Rotation in coordinates 1..D-1 (coordinate 0 stays axis-aligned so the
// first feature remains monotone in the label) composed with a diagonal
// scale, plus a translation.
AffineMap DrawMap(const SyntheticSpec& spec, Rng& rng) {
  const std::size_t d = spec.feature_dim;
  Tensor rot = Tensor::Matrix(d, d);
  for (std::size_t i = 0; i < d; ++i) rot.at(i, i) = 1.0;
  if (d > 2) {
    const std::size_t givens = 2 * d;
    for (std::size_t g = 0; g < givens; ++g) {
      const std::size_t p = 1 + UniformIndex(rng, d - 1);
      std::size_t q = 1 + UniformIndex(rng, d - 2);
      if (q >= p) ++q;
      const double angle = (2.0 * Uniform01(rng) - 1.0) * spec.rotation_scale;
      const double c = std::cos(angle), s = std::sin(angle);
      for (std::size_t col = 0; col < d; ++col) {
        const double rp = rot.at(p, col), rq = rot.at(q, col);
        rot.at(p, col) = c * rp - s * rq;
        rot.at(q, col) = s * rp + c * rq;
      }
    }
  }
  const double half_log = 0.5 * std::log(spec.max_condition);
  AffineMap map{Tensor::Matrix(d, d), std::vector<double>(d)};
  for (std::size_t j = 0; j < d; ++j) {
    const double scale = std::exp((2.0 * Uniform01(rng) - 1.0) * half_log);
    for (std::size_t i = 0; i < d; ++i) map.linear.at(i, j) = rot.at(i, j) * scale;
  }
  for (std::size_t i = 0; i < d; ++i) {
    map.offset[i] = spec.translation_scale * StandardNormal(rng);
  }
  return map;
}

}  // namespace

SyntheticGenerator::SyntheticGenerator(const ScenarioSpec& scenario,
                                       const SyntheticSpec& spec)
    : scenario_(scenario), spec_(spec) {
  if (spec.noise_sigma < 0.0) {
    throw std::invalid_argument("synthetic: noise_sigma must be >= 0");
  }
  if (spec.feature_dim < 2) {
    throw std::invalid_argument("synthetic: feature_dim must be >= 2");
  }
  if (spec.harmonic_amplitude < 0.0 || spec.trend_scale < 0.0) {
    throw std::invalid_argument("synthetic: curve scales must be >= 0");
  }
  if (spec.max_condition < 1.0) {
    throw std::invalid_argument("synthetic: max_condition must be >= 1");
  }
  const std::size_t d = spec.feature_dim;
  const std::size_t h = spec.harmonics;
  Rng curve_rng(DeriveSeed(spec.curve_seed, Stream::kCurve));
  amplitude_ = Tensor::Matrix(d, h);
  phase_ = Tensor::Matrix(d, h);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < h; ++k) {
      double a = spec.harmonic_amplitude * StandardNormal(curve_rng) /
                 static_cast<double>(k + 1);
      if (j == 0) a *= kOrderAxisHarmonicScale;
      amplitude_.at(j, k) = a;
      phase_.at(j, k) = 2.0 * std::numbers::pi * Uniform01(curve_rng);
    }
  }
  // Bound on |d/dt| of the coordinate-0 harmonics; the drift exceeds it.
  double bound = 0.0;
  for (std::size_t k = 0; k < h; ++k) {
    bound += std::abs(amplitude_.at(0, k)) * Frequency(k);
  }
  trend_.assign(d, 0.0);
  trend_[0] = std::max(1.0, 1.5 * bound);
  for (std::size_t j = 1; j < d; ++j) trend_[j] = spec.trend_scale * StandardNormal(curve_rng);

  Rng shift_rng(DeriveSeed(spec.domain_shift_seed, Stream::kDomainShift));
  source_map_ = DrawMap(spec, shift_rng);
  target_map_ = spec.identical_maps ? source_map_ : DrawMap(spec, shift_rng);
}

double SyntheticGenerator::Position(int label) const {
  const ClassRange all = scenario_.Union();
  if (all.count() == 1) return 0.5;
  return static_cast<double>(label - all.lo) / static_cast<double>(all.hi - all.lo);
}

std::vector<double> SyntheticGenerator::Curve(double t) const {
  std::vector<double> c(spec_.feature_dim, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t k = 0; k < spec_.harmonics; ++k) {
      c[j] += amplitude_.at(j, k) *
              std::sin(Frequency(k) * t + phase_.at(j, k));
    }
    c[j] += trend_[j] * t;
  }
  return c;
}

std::vector<double> SyntheticGenerator::Embed(int label, Domain domain) const {
  const auto c = Curve(Position(label));
  const AffineMap& map = Map(domain);
  std::vector<double> x(map.offset);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) x[i] += map.linear.at(i, j) * c[j];
  }
  return x;
}

Dataset SyntheticGenerator::GenerateDomain(Domain domain, std::size_t count,
                                           std::int64_t first_id) const {
  const ClassRange range =
      domain == Domain::kSource ? scenario_.source : scenario_.target;
  Dataset data(spec_.feature_dim, scenario_.source, scenario_.target);
  const std::uint64_t tag = domain == Domain::kSource ? 0 : 1;
  Rng label_rng(DeriveSeed(spec_.noise_seed, Stream::kLabels, tag));
  Rng noise_rng(DeriveSeed(spec_.noise_seed, Stream::kNoise, tag));
  for (std::size_t i = 0; i < count; ++i) {
    const int y = range.lo + static_cast<int>(UniformIndex(
                                 label_rng, static_cast<std::size_t>(range.count())));
    Instance inst;
    inst.id = first_id + static_cast<std::int64_t>(i);
    inst.domain = domain;
    inst.label = y;
    inst.features = Embed(y, domain);
    for (double& f : inst.features) f += spec_.noise_sigma * StandardNormal(noise_rng);
    data.Add(inst);
  }
  return data;
}

std::pair<Dataset, Dataset> SyntheticGenerator::Generate() const {
  const std::size_t n_source =
      spec_.source_count ? spec_.source_count
                         : spec_.samples_per_class *
                               static_cast<std::size_t>(scenario_.source.count());
  const std::size_t n_target =
      spec_.target_count ? spec_.target_count
                         : spec_.samples_per_class *
                               static_cast<std::size_t>(scenario_.target.count());
  if (n_source == 0 || n_target == 0) {
    throw std::invalid_argument("synthetic: empty domain");
  }
  return {GenerateDomain(Domain::kSource, n_source, 0),
          GenerateDomain(Domain::kTarget, n_target,
                         static_cast<std::int64_t>(n_source))};
}

std::pair<Dataset, Dataset> GenerateSynthetic(const ScenarioSpec& scenario,
                                              const SyntheticSpec& spec) {
  return SyntheticGenerator(scenario, spec).Generate();
}

}  // namespace oruda
