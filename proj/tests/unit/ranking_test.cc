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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "oruda/commonness.h"
#include "oruda/metrics.h"
#include "oruda/ranking.h"
#include "support/bt_oracle.h"

namespace oruda {
namespace {

using testing::ExhaustiveComparisons;
using testing::GridSearchMle;
using testing::NoisyHardComparisons;

std::vector<double> DistinctScores(std::size_t n, std::uint64_t seed, double scale) {
  Rng rng(seed);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = scale * static_cast<double>(i) / n + 0.01 * Uniform01(rng);
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

TEST_SUITE("ranking") {

TEST_CASE("verdicts follow the weight threshold and precedence side") {
  const FilterConfig f;
  WeightTable t;
  for (double p : {0.98, 0.5, 1.0, 0.0, 0.2}) {
    t.target_precedence.push_back(p);
    t.target_weights.push_back(SmoothFilter(p, f));
  }
  CHECK(t.target_weights[0] > 0.5);
  const auto v = MarkTargets(t);
  CHECK(v[0] == PrivateVerdict{false, Segment::kNone});
  CHECK(v[1] == PrivateVerdict{false, Segment::kNone});
  CHECK(v[2] == PrivateVerdict{true, Segment::kLow});
  CHECK(v[3] == PrivateVerdict{true, Segment::kHigh});
  CHECK_FALSE(v[4].is_private);
  t.target_weights.pop_back();
  CHECK_THROWS(MarkTargets(t));
}

TEST_CASE("private source classes are those at or below one half") {
  WeightTable t;
  t.source_class_weights = {{1, 1.0}, {2, 0.5}, {3, 0.2}, {4, 0.51}};
  CHECK(PrivateSourceClasses(t) == std::vector<int>{2, 3});
}

TEST_CASE("pair sampling respects the degree cap without duplicates") {
  for (std::size_t n : {2u, 5u, 40u, 250u}) {
    for (std::size_t deg : {1u, 3u, 20u, 100u}) {
      const auto pairs = SamplePairIndices(n, deg, n * 31 + deg);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      std::vector<std::size_t> degree(n, 0);
      for (auto [i, j] : pairs) {
        CHECK(i != j);
        CHECK(seen.insert({std::min(i, j), std::max(i, j)}).second);
        ++degree[i];
        ++degree[j];
      }
      for (std::size_t d : degree) CHECK(d <= deg);
      if (deg >= n - 1) CHECK(pairs.size() == n * (n - 1) / 2);
      ComparisonSet cs{n, {}};
      for (auto [i, j] : pairs) cs.records.push_back({i, j, 0.5});
      std::size_t comps = 0;
      cs.Components(&comps);
      if (deg >= 2) CHECK(comps == 1);
    }
  }
  CHECK(SamplePairIndices(1, 5, 1).empty());
  CHECK(SamplePairIndices(30, 4, 9) == SamplePairIndices(30, 4, 9));
}

TEST_CASE("components and degrees") {
  ComparisonSet cs{5, {{0, 1, 0.5}, {3, 4, 0.7}}};
  std::size_t count = 0;
  const auto c = cs.Components(&count);
  CHECK(count == 3);
  CHECK(c[0] == c[1]);
  CHECK(c[3] == c[4]);
  CHECK(c[0] != c[2]);
  CHECK(cs.Degrees() == std::vector<std::size_t>{1, 1, 0, 1, 1});
}

TEST_CASE("two items with an even comparison score zero") {
  const auto fit = FitBradleyTerry({2, {{0, 1, 0.5}}});
  CHECK(fit.converged);
  CHECK(fit.scores[0] == doctest::Approx(0.0));
  CHECK(fit.scores[1] == doctest::Approx(0.0));
}

TEST_CASE("a single soft comparison inverts the logit") {
  const auto fit = FitBradleyTerry({2, {{0, 1, 0.75}}});
  CHECK(fit.scores[1] - fit.scores[0] == doctest::Approx(std::log(3.0)).epsilon(1e-5));
  CHECK(fit.scores[1] - fit.scores[0] == doctest::Approx(1.0986).epsilon(1e-4));
}

TEST_CASE("three items agree with the grid-search maximum") {
  const ComparisonSet cs = ExhaustiveComparisons({-1.0, 0.2, 1.5});
  const auto fit = FitBradleyTerry(cs);
  const auto grid = GridSearchMle(cs, -4.0, 4.0, 0.005);
  for (std::size_t i = 0; i < 3; ++i) CHECK(fit.scores[i] == doctest::Approx(grid[i]).epsilon(0.01));
  CHECK(fit.scores[0] < fit.scores[1]);
  CHECK(fit.scores[1] < fit.scores[2]);
  // Transitive hard outcomes for labels 1 < 2 < 3.
  const auto hard = FitBradleyTerry({3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}});
  CHECK(hard.scores[0] < hard.scores[1]);
  CHECK(hard.scores[1] < hard.scores[2]);
}

TEST_CASE("four noisy items agree with the grid-search maximum") {
  ComparisonSet cs{4, {}};
  const double p[4][4] = {{0, 0.8, 0.3, 0.9}, {0, 0, 0.6, 0.7}, {0, 0, 0, 0.55}, {0, 0, 0, 0}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) cs.records.push_back({i, j, p[i][j]});
  }
  const auto fit = FitBradleyTerry(cs);
  const auto grid = GridSearchMle(cs, -3.0, 3.0, 0.02);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fit.scores[i] - grid[i]) <= 0.03);
}

TEST_CASE("fitted scores are shift invariant") {
  std::vector<double> truth = DistinctScores(20, 3, 6.0);
  const auto a = FitBradleyTerry(ExhaustiveComparisons(truth));
  for (double& v : truth) v += 7.5;
  const auto b = FitBradleyTerry(ExhaustiveComparisons(truth));
  for (std::size_t i = 0; i < truth.size(); ++i) CHECK(a.scores[i] == doctest::Approx(b.scores[i]).epsilon(1e-8));
  double mean = 0.0;
  for (double v : a.scores) mean += v;
  CHECK(std::abs(mean) <= 1e-9);
}

TEST_CASE("noise-free exhaustive comparisons recover the order of 50 items") {
  const std::vector<double> truth = DistinctScores(50, 5, 8.0);
  const auto fit = FitBradleyTerry(ExhaustiveComparisons(truth));
  CHECK(fit.converged);
  CHECK(KendallTauB(fit.scores, truth) == 1.0);
}

TEST_CASE("disconnected components are fitted independently") {
  const ComparisonSet a = ExhaustiveComparisons({0.0, 1.0, 3.0});
  const ComparisonSet b = ExhaustiveComparisons({-2.0, 0.5});
  ComparisonSet joint{5, a.records};
  for (auto r : b.records) joint.records.push_back({r.i + 3, r.j + 3, r.p});
  const auto fj = FitBradleyTerry(joint);
  const auto fa = FitBradleyTerry(a);
  const auto fb = FitBradleyTerry(b);
  CHECK(fj.components == 2);
  for (std::size_t i = 0; i < 3; ++i) CHECK(fj.scores[i] == doctest::Approx(fa.scores[i]).epsilon(1e-8));
  for (std::size_t i = 0; i < 2; ++i) CHECK(fj.scores[i + 3] == doctest::Approx(fb.scores[i]).epsilon(1e-8));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS(FitBradleyTerry({0, {}}));
  CHECK_THROWS(FitBradleyTerry({3, {}}));
  const auto tie = FitBradleyTerry({3, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}}});
  for (double s : tie.scores) CHECK(std::abs(s) <= 1e-12);
}

TEST_CASE("flipped hard comparisons at degree 20 still rank well") {
  double mean_tau = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<double> truth = DistinctScores(50, seed, 1.0);
    const auto fit = FitBradleyTerry(NoisyHardComparisons(truth, 20, 0.1, 100 + seed));
    mean_tau += KendallTauB(fit.scores, truth) / 10.0;
  }
  CHECK(mean_tau >= 0.8);
}

TEST_CASE("equal split onto private classes") {
  const ClassRange common{15, 40};
  const std::vector<double> s{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  CHECK(RanksToClasses(s, Segment::kHigh, 3, common) == std::vector<int>{41, 41, 42, 42, 43, 43});
  CHECK(RanksToClasses(s, Segment::kLow, 3, common) == std::vector<int>{12, 12, 13, 13, 14, 14});
  const std::vector<double> seven{7, 6, 5, 4, 3, 2, 1};
  CHECK(RanksToClasses(seven, Segment::kHigh, 3, common) == std::vector<int>{43, 43, 42, 42, 41, 41, 41});
  CHECK(RanksToClasses(seven, Segment::kLow, 3, common) == std::vector<int>{14, 14, 14, 13, 13, 12, 12});
  const std::vector<double> one{0.3};
  CHECK(RanksToClasses(one, Segment::kHigh, 1, common) == std::vector<int>{41});
  const std::vector<double> perm{0.9, 0.1, 0.5};
  CHECK(RanksToClasses(perm, Segment::kHigh, 3, common) == std::vector<int>{43, 41, 42});
  CHECK_THROWS(RanksToClasses(perm, Segment::kNone, 3, common));
  CHECK_THROWS(RanksToClasses(perm, Segment::kHigh, 0, common));
}

TEST_CASE("class assignment is monotone in score") {
  Rng rng(4);
  std::vector<double> s(37);
  for (double& v : s) v = StandardNormal(rng);
  const auto hi = RanksToClasses(s, Segment::kHigh, 5, {1, 10});
  const auto lo = RanksToClasses(s, Segment::kLow, 5, {20, 30});
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (s[a] < s[b]) {
        CHECK(hi[a] <= hi[b]);
        CHECK(lo[a] <= lo[b]);
      }
    }
  }
}

TEST_CASE("oracle ranking of a two-sided open-set target recovers every class") {
  const ScenarioSpec sc = DeriveScenario({15, 40}, {1, 50});
  std::vector<int> labels;
  std::vector<PrivateVerdict> verdicts;
  for (int y = 1; y <= 50; ++y) {
    for (int k = 0; k < 4; ++k) {
      labels.push_back(y);
      const Segment side = sc.TargetSide(y);
      verdicts.push_back({side != Segment::kNone, side});
    }
  }
  const auto rankings = RankPrivateTargets(OracleComparator::Exact(), {nullptr, labels},
                                           verdicts, sc, 100, 3);
  REQUIRE(rankings.size() == 2);
  std::size_t ranked = 0;
  for (const auto& seg : rankings) {
    CHECK(seg.components == 1);
    for (std::size_t k = 0; k < seg.rows.size(); ++k) CHECK(seg.classes[k] == labels[seg.rows[k]]);
    ranked += seg.rows.size();
  }
  CHECK(ranked == (14 + 10) * 4);
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda
