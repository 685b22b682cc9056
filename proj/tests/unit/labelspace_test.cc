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

#include <stdexcept>

#include "oruda/labelspace.h"

namespace oruda {
namespace {

TEST_SUITE("labelspace") {

TEST_CASE("open-set scenario splits the target into two private segments") {
  const ScenarioSpec s = DeriveScenario({15, 40}, {1, 80});
  CHECK(s.common == ClassRange{15, 40});
  CHECK(s.source_private.empty());
  REQUIRE(s.target_private.size() == 2);
  CHECK(s.target_private[0].range == ClassRange{1, 14});
  CHECK(s.target_private[0].side == Segment::kLow);
  CHECK(s.target_private[1].range == ClassRange{41, 80});
  CHECK(s.target_private[1].side == Segment::kHigh);
  CHECK(s.xi == doctest::Approx(26.0 / 80.0).epsilon(1e-15));
  CHECK(s.config == Configuration::kOS);
}

TEST_CASE("partial-open scenario") {
  const ScenarioSpec s = DeriveScenario({15, 40}, {1, 30});
  CHECK(s.common == ClassRange{15, 30});
  CHECK(s.xi == doctest::Approx(16.0 / 40.0).epsilon(1e-15));
  CHECK(s.config == Configuration::kOSPA);
  REQUIRE(s.source_private.size() == 1);
  CHECK(s.source_private[0].range == ClassRange{31, 40});
  CHECK(s.TargetPrivateCount(Segment::kLow) == 14);
  CHECK(s.TargetPrivateCount(Segment::kHigh) == 0);
  CHECK(s.TargetSide(3) == Segment::kLow);
  CHECK(s.TargetSide(20) == Segment::kNone);
}

TEST_CASE("closed-set and partial scenarios") {
  const ScenarioSpec cs = DeriveScenario({15, 40}, {15, 40});
  CHECK(cs.config == Configuration::kCS);
  CHECK(cs.xi == 1.0);
  const ScenarioSpec pa = DeriveScenario({0, 40}, {15, 40});
  CHECK(pa.config == Configuration::kPA);
  CHECK(pa.target_private.empty());
}

TEST_CASE("disjoint ranges are rejected") {
  CHECK_THROWS_WITH_AS(DeriveScenario({1, 10}, {11, 20}), "empty common set",
                       std::invalid_argument);
  CHECK_THROWS_AS(MakeRange(5, 4), std::invalid_argument);
}

TEST_CASE("xi is symmetric and private counts partition each range") {
  for (int a = 0; a < 12; ++a) {
    for (int b = a; b < 12; ++b) {
      for (int c = 0; c < 12; ++c) {
        for (int d = c; d < 12; ++d) {
          if (b < c || d < a) continue;
          const ScenarioSpec st = DeriveScenario({a, b}, {c, d});
          const ScenarioSpec ts = DeriveScenario({c, d}, {a, b});
          CHECK(st.xi == ts.xi);
          int src = st.common.count(), tgt = st.common.count();
          for (const auto& p : st.source_private) src += p.range.count();
          for (const auto& p : st.target_private) tgt += p.range.count();
          CHECK(src == st.source.count());
          CHECK(tgt == st.target.count());
          const bool sp = !st.source_private.empty(), tp = !st.target_private.empty();
          const Configuration expected = !sp && !tp ? Configuration::kCS
                                         : sp && !tp ? Configuration::kPA
                                         : !sp && tp ? Configuration::kOS
                                                     : Configuration::kOSPA;
          CHECK(st.config == expected);
        }
      }
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda
