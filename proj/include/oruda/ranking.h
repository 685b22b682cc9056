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

#ifndef ORUDA_RANKING_H_
#define ORUDA_RANKING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oruda/commonness.h"
#include "oruda/labelspace.h"

namespace oruda {

struct PrivateVerdict {
  bool is_private = false;
  Segment segment = Segment::kNone;  // kNone iff !is_private
  friend bool operator==(const PrivateVerdict&, const PrivateVerdict&) = default;
};

// Private iff the target weight is <= 0.5. A private instance with stored
// precedence above 0.5 precedes the source set and lies in the low segment.
std::vector<PrivateVerdict> MarkTargets(const WeightTable& table);

// Source classes whose weight is <= 0.5.
std::vector<int> PrivateSourceClasses(const WeightTable& table);

struct Comparison {
  std::size_t i = 0;
  std::size_t j = 0;
  double p = 0.5;  // p(item i precedes item j), read as a soft win for j
};

struct ComparisonSet {
  std::size_t n_items = 0;
  std::vector<Comparison> records;

  // Component index per item; isolated items form their own components.
  std::vector<std::size_t> Components(std::size_t* count = nullptr) const;
  std::vector<std::size_t> Degrees() const;
};

// Random unordered pairs over n items: a random Hamiltonian cycle for
// connectivity, then uniform pairs, deduplicated, with every degree at most
// `max_degree`. All pairs are used when max_degree >= n - 1.
std::vector<std::pair<std::size_t, std::size_t>> SamplePairIndices(
    std::size_t n, std::size_t max_degree, std::uint64_t seed);

// Evaluates the comparator on sampled pairs of `rows` of `items`. Each
// record averages both orientations: p = (p(i<j) + 1 - p(j<i)) / 2.
ComparisonSet SampleComparisons(const Comparator& cmp, const ItemSet& items,
                                std::span<const std::size_t> rows,
                                std::size_t max_degree, std::uint64_t seed);

struct BradleyTerryOptions {
  double lambda = 1e-6;
  double tolerance = 1e-8;
  int max_iterations = 10000;
  double max_step = 5.0;  // damping: cap on |delta s| per iteration
};

struct BradleyTerryFit {
  std::vector<double> scores;  // mean 0 within each component
  int iterations = 0;
  bool converged = false;
  std::size_t components = 0;
};

// Maximum-likelihood scores with p(i precedes j) = logistic(s_j - s_i),
// soft wins and an L2 penalty lambda * s^2 / 2, fitted per connected
// component by minorize-maximize sweeps. Throws on an empty set.
BradleyTerryFit FitBradleyTerry(const ComparisonSet& cs,
                                const BradleyTerryOptions& options = {});

// Equal split of the score ranking into m classes next to the common range:
// ascending score from common.hi + 1 upward for kHigh, descending score from
// common.lo - 1 downward for kLow. Earlier groups take the extra items.
std::vector<int> RanksToClasses(std::span<const double> scores, Segment segment,
                                int m_private, ClassRange common);

struct SegmentRanking {
  Segment segment = Segment::kNone;
  std::vector<std::size_t> rows;  // item rows in this segment
  std::vector<double> scores;     // aligned with rows
  std::vector<int> classes;       // aligned with rows
  std::size_t components = 0;
};

// Ranks each private segment independently and assigns classes. Segments
// the scenario does not have (m = 0) are skipped; their rows keep no class.
std::vector<SegmentRanking> RankPrivateTargets(
    const Comparator& cmp, const ItemSet& targets,
    std::span<const PrivateVerdict> verdicts, const ScenarioSpec& scenario,
    std::size_t max_degree, std::uint64_t seed);

}  // namespace oruda

#endif  // ORUDA_RANKING_H_
