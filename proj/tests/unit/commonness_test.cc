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
#include <numeric>
#include <vector>

#include "oruda/commonness.h"
#include "oruda/labelspace.h"
#include "oruda/rng.h"

namespace oruda {
namespace {

std::vector<int> LabelsFor(ClassRange r, int per_class) {
  std::vector<int> out;
  for (int y = r.lo; y <= r.hi; ++y) out.insert(out.end(), per_class, y);
  return out;
}

std::vector<std::int64_t> Ids(std::size_t n) {
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
  return ids;
}

// Exhaustive precedence with the tie-splitting indicator, written directly.
double Indicator(int a, int b) { return a < b ? 1.0 : (a == b ? 0.5 : 0.0); }

TEST_SUITE("commonness") {

TEST_CASE("binary filter") {
  CHECK(BinaryFilter(0.0) == 0.0);
  CHECK(BinaryFilter(1.0) == 0.0);
  CHECK(BinaryFilter(0.5) == 1.0);
  CHECK(BinaryFilter(0.999) == 1.0);
  CHECK(BinaryFilter(1e-300) == 1.0);
}

TEST_CASE("smooth filter contract") {
  const FilterConfig cfg;
  CHECK(SmoothFilter(0.5, cfg) == 1.0);
  CHECK(std::abs(SmoothFilter(0.05, cfg) - 1 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(SmoothFilter(0.95, cfg) - 1 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(SmoothFilter(0.0, cfg) - 0.469) <= 1e-3);
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    CHECK(SmoothFilter(x, cfg) == doctest::Approx(SmoothFilter(1 - x, cfg)).epsilon(1e-14));
    CHECK(SmoothFilter(x, cfg) > 0.0);
    CHECK(SmoothFilter(x, cfg) <= 1.0);
  }
  // Non-increasing away from the centre.
  double prev = 1.0;
  for (int i = 0; i <= 500; ++i) {
    const double v = SmoothFilter(0.5 + i / 1000.0, cfg);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("filter mode dispatch and validation") {
  FilterConfig cfg;
  cfg.mode = FilterMode::kBinary;
  CHECK(ApplyFilter(0.0, cfg) == 0.0);
  cfg.mode = FilterMode::kSmooth;
  CHECK(ApplyFilter(0.0, cfg) == doctest::Approx(SmoothFilter(0.0, cfg)));
  CHECK_THROWS(FilterConfig{0.0, 6, FilterMode::kSmooth}.Validate());
  CHECK_THROWS(FilterConfig{0.9, 0, FilterMode::kSmooth}.Validate());
  CHECK_THROWS(FilterConfig{1.2, 6, FilterMode::kSmooth}.Validate());
}

TEST_CASE("oracle refresh on an open-set task matches ground truth and the exhaustive sums") {
  const ClassRange src{15, 40}, tgt{1, 80};
  const ScenarioSpec sc = DeriveScenario(src, tgt);
  REQUIRE(sc.config == Configuration::kOS);
  const auto s_labels = LabelsFor(src, 3);
  const auto t_labels = LabelsFor(tgt, 2);
  const ItemSet sources{nullptr, s_labels};
  const ItemSet targets{nullptr, t_labels};
  RefreshConfig rc;
  rc.filter.mode = FilterMode::kBinary;
  rc.source_sample = s_labels.size();
  rc.target_sample = t_labels.size();
  const auto ids = Ids(t_labels.size());
  const auto table = RefreshWeights(OracleComparator::Exact(), sources, s_labels,
                                    src, targets, ids, rc, 7, 1);
  for (std::size_t t = 0; t < t_labels.size(); ++t) {
    double sum = 0.0;
    for (int ys : s_labels) sum += Indicator(t_labels[t], ys);
    const double exhaustive = BinaryFilter(sum / s_labels.size());
    CHECK(table.target_weights[t] == exhaustive);
    CHECK(table.target_weights[t] == (sc.IsCommon(t_labels[t]) ? 1.0 : 0.0));
  }
  for (int y = src.lo; y <= src.hi; ++y) {
    double sum = 0.0;
    for (int yt : t_labels) sum += Indicator(y, yt);
    CHECK(table.source_class_weights.at(y) == BinaryFilter(sum / t_labels.size()));
    CHECK(table.source_class_weights.at(y) == 1.0);
  }
}

TEST_CASE("sampling class members leaves label-determined precedences unchanged") {
  // The oracle depends on labels only, so one member per class with the full
  // target set gives the exhaustive class precedence.
  const ClassRange src{15, 40}, tgt{1, 30};
  const auto s_labels = LabelsFor(src, 4);
  const auto t_labels = LabelsFor(tgt, 2);
  RefreshConfig all;
  all.source_sample = s_labels.size();
  all.target_sample = t_labels.size();
  RefreshConfig one = all;
  one.class_sample = 1;
  const auto ids = Ids(t_labels.size());
  const auto a = RefreshWeights(OracleComparator::Exact(), {nullptr, s_labels}, s_labels, src,
                                {nullptr, t_labels}, ids, all, 3, 1);
  const auto b = RefreshWeights(OracleComparator::Exact(), {nullptr, s_labels}, s_labels, src,
                                {nullptr, t_labels}, ids, one, 3, 1);
  CHECK(a.source_class_precedence == b.source_class_precedence);
  CHECK(a.source_class_weights == b.source_class_weights);
}

TEST_CASE("oracle refresh flags private source classes on a partial task") {
  const ClassRange src{15, 40}, tgt{1, 30};
  const ScenarioSpec sc = DeriveScenario(src, tgt);
  const auto s_labels = LabelsFor(src, 2);
  const auto t_labels = LabelsFor(tgt, 2);
  RefreshConfig rc;
  rc.filter.mode = FilterMode::kBinary;
  rc.source_sample = 1000;
  rc.target_sample = 1000;
  const auto table = RefreshWeights(OracleComparator::Exact(), {nullptr, s_labels},
                                    s_labels, src, {nullptr, t_labels},
                                    Ids(t_labels.size()), rc, 1, 1);
  for (int y = src.lo; y <= src.hi; ++y) {
    CHECK(table.source_class_weights.at(y) == (sc.IsCommon(y) ? 1.0 : 0.0));
  }
  for (std::size_t t = 0; t < t_labels.size(); ++t) {
    CHECK(table.target_weights[t] == (sc.IsCommon(t_labels[t]) ? 1.0 : 0.0));
  }
  const auto sum = Summarize(table);
  CHECK(sum.private_source_classes == 10);
  CHECK(sum.private_fraction == doctest::Approx(14.0 / 30.0));
}

TEST_CASE("a hard tau indicator misjudges common classes near the boundary") {
  const ClassRange src{15, 40}, tgt{1, 30};
  const auto s_labels = LabelsFor(src, 2);
  const auto t_labels = LabelsFor(tgt, 2);
  RefreshConfig rc;
  rc.filter.mode = FilterMode::kBinary;
  rc.source_sample = 1000;
  rc.target_sample = 1000;
  const auto table = RefreshWeights(OracleComparator(3, false), {nullptr, s_labels},
                                    s_labels, src, {nullptr, t_labels},
                                    Ids(t_labels.size()), rc, 1, 1);
  // Target 17 satisfies 17 <= y_s + 3 for every source label, so it looks
  // private although it is common.
  const auto it = std::find(t_labels.begin(), t_labels.end(), 17);
  CHECK(table.target_weights[static_cast<std::size_t>(it - t_labels.begin())] == 0.0);
}

TEST_CASE("closed-set oracle refresh keeps every source class") {
  const ClassRange r{15, 40};
  const auto labels = LabelsFor(r, 2);
  RefreshConfig rc;
  rc.filter.mode = FilterMode::kBinary;
  const auto table = RefreshWeights(OracleComparator::Exact(), {nullptr, labels}, labels,
                                    r, {nullptr, labels}, Ids(labels.size()), rc, 3, 2);
  for (const auto& [y, w] : table.source_class_weights) CHECK(w == 1.0);
  CHECK(table.epoch_stamp == 2);
}

TEST_CASE("an uninformative comparator leaves every weight at one") {
  const ClassRange src{15, 40};
  const auto s_labels = LabelsFor(src, 2);
  const auto t_labels = LabelsFor({1, 30}, 2);
  const auto table = RefreshWeights(ConstantComparator(0.5), {nullptr, s_labels},
                                    s_labels, src, {nullptr, t_labels},
                                    Ids(t_labels.size()), RefreshConfig{}, 4, 1);
  for (double w : table.target_weights) CHECK(w == 1.0);
  for (const auto& [y, w] : table.source_class_weights) CHECK(w == 1.0);
}

TEST_CASE("sampled refresh keeps weights in the unit interval and is seeded") {
  const ClassRange src{15, 40};
  Rng rng(12);
  std::vector<int> s_labels, t_labels;
  for (int i = 0; i < 400; ++i) s_labels.push_back(15 + static_cast<int>(UniformIndex(rng, 26)));
  for (int i = 0; i < 300; ++i) t_labels.push_back(1 + static_cast<int>(UniformIndex(rng, 30)));
  RefreshConfig rc;
  rc.source_sample = 20;
  rc.target_sample = 20;
  const auto ids = Ids(t_labels.size());
  const OracleComparator cmp = OracleComparator::Exact();
  const auto a = RefreshWeights(cmp, {nullptr, s_labels}, s_labels, src, {nullptr, t_labels}, ids, rc, 5, 3);
  const auto b = RefreshWeights(cmp, {nullptr, s_labels}, s_labels, src, {nullptr, t_labels}, ids, rc, 5, 3);
  const auto c = RefreshWeights(cmp, {nullptr, s_labels}, s_labels, src, {nullptr, t_labels}, ids, rc, 5, 4);
  CHECK(a.target_weights == b.target_weights);
  CHECK(a.source_class_weights == b.source_class_weights);
  CHECK(a.target_precedence != c.target_precedence);
  for (double w : a.target_weights) {
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("an empty source class defaults to weight one") {
  const ClassRange src{1, 5};
  const std::vector<int> s_labels{1, 2, 4, 5};
  const std::vector<int> t_labels{1, 2, 3};
  RefreshConfig rc;
  rc.filter.mode = FilterMode::kBinary;
  const auto table = RefreshWeights(OracleComparator::Exact(), {nullptr, s_labels},
                                    s_labels, src, {nullptr, t_labels}, Ids(3), rc, 1, 1);
  CHECK(table.source_class_weights.at(3) == 1.0);
  CHECK(table.source_class_weights.at(5) == 0.0);
}

TEST_CASE("refresh input errors") {
  const std::vector<int> s{1, 2};
  const std::vector<int> none;
  CHECK_THROWS(RefreshWeights(ConstantComparator(0.5), {nullptr, s}, s, {1, 2},
                              {nullptr, none}, {}, RefreshConfig{}, 1, 1));
  const std::vector<int> bad{1, 9};
  CHECK_THROWS(RefreshWeights(ConstantComparator(0.5), {nullptr, bad}, bad, {1, 2},
                              {nullptr, s}, Ids(2), RefreshConfig{}, 1, 1));
}

TEST_CASE("uniform table and per-instance source weights") {
  const auto ids = Ids(4);
  const auto t = WeightTable::Uniform(ids, {3, 6});
  CHECK(t.target_weights == std::vector<double>(4, 1.0));
  CHECK(t.source_class_weights.size() == 4);
  CHECK(t.SourceWeight(5) == 1.0);
  WeightTable u = t;
  u.source_class_weights[4] = 0.25;
  const std::vector<int> batch{4, 6, 4};
  CHECK(u.SourceWeights(batch) == std::vector<double>{0.25, 1.0, 0.25});
  CHECK(u.SourceWeight(99) == 1.0);
}

TEST_CASE("index sampling draws distinct sorted indices") {
  Rng rng(3);
  const auto all = SampleIndices(5, 10, rng);
  CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4});
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = SampleIndices(100, 30, rng);
    REQUIRE(s.size() == 30);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1] < s[i]);
    CHECK(s.back() < 100);
  }
}

TEST_CASE("weight summary histogram") {
  WeightTable t;
  t.target_weights = {0.0, 0.05, 0.5, 0.51, 1.0};
  t.source_class_weights = {{1, 0.2}, {2, 0.9}};
  const auto s = Summarize(t);
  CHECK(s.histogram[0] == 2);
  CHECK(s.histogram[5] == 2);
  CHECK(s.histogram[9] == 1);
  CHECK(s.private_fraction == doctest::Approx(0.6));
  CHECK(s.mean_target_weight == doctest::Approx(2.06 / 5));
  CHECK(s.private_source_classes == 1);
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda
