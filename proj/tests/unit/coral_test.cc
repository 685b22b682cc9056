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
#include <functional>
#include <vector>

#include "oruda/coral.h"
#include "oruda/gradcheck.h"
#include "oruda/rng.h"

namespace oruda {
namespace {

TEST_SUITE("coral") {

TEST_CASE("extended label encoding") {
  const ClassRange r{15, 40};
  const auto lo = EncodeExtended(15, r);
  CHECK(lo.size() == 25);
  for (auto b : lo) CHECK(b == 0);
  for (auto b : EncodeExtended(40, r)) CHECK(b == 1);
  const auto y18 = EncodeExtended(18, r);
  for (std::size_t k = 0; k < y18.size(); ++k) CHECK(y18[k] == (k < 3 ? 1 : 0));
  CHECK_THROWS(EncodeExtended(41, r));
}

TEST_CASE("decoding counts thresholds above one half") {
  const ClassRange r{15, 40};
  std::vector<double> p(25, 0.1);
  CHECK(DecodeCoral(p, r) == 15);
  std::fill(p.begin(), p.end(), 0.9);
  CHECK(DecodeCoral(p, r) == 40);
  std::fill(p.begin(), p.end(), 0.0);
  p[0] = p[1] = p[2] = 1.0;
  CHECK(DecodeCoral(p, r) == 18);
  // Exactly 0.5 is not above the threshold.
  std::fill(p.begin(), p.end(), 0.5);
  CHECK(DecodeCoral(p, r) == 15);
}

TEST_CASE("decode inverts encode on a 50-class range") {
  const ClassRange r{1, 50};
  for (int y = r.lo; y <= r.hi; ++y) {
    const auto bits = EncodeExtended(y, r);
    const std::vector<double> p(bits.begin(), bits.end());
    CHECK(DecodeCoral(p, r) == y);
  }
}

TEST_CASE("coral loss is minimal at the label bits and clamps extremes") {
  const auto bits = EncodeExtended(5, {1, 8});
  const std::vector<double> exact(bits.begin(), bits.end());
  CHECK(CoralLoss(exact, bits) == doctest::Approx(7 * -std::log(1 - 1e-12)));
  std::vector<double> off = exact;
  off[2] = 0.7;
  CHECK(CoralLoss(off, bits) > CoralLoss(exact, bits));
  std::vector<double> wrong(7);
  for (std::size_t k = 0; k < 7; ++k) wrong[k] = 1.0 - exact[k];
  CHECK(std::isfinite(CoralLoss(wrong, bits)));
}

TEST_CASE("initial biases encode the uniform label prior") {
  const OrdinalHead head("G_r", {6, 16, {1, 12}, HeadKind::kCoral});
  ParameterBank bank;
  Rng rng(3);
  head.InitParams(bank, rng);
  const Tensor& b = bank.at(head.ThresholdBiasName()).value;
  REQUIRE(b.size() == 11);
  for (std::size_t i = 0; i < b.size(); ++i) {
    // P(y > 1 + i) for y uniform on 1..12.
    const double prior = static_cast<double>(11 - i) / 12.0;
    CHECK(1.0 / (1.0 + std::exp(-b[i])) == doctest::Approx(prior).epsilon(1e-12));
    CHECK(b[i] == doctest::Approx(-b[b.size() - 1 - i]).epsilon(1e-12));
  }
}

TEST_CASE("sorted biases give monotone probabilities") {
  const OrdinalHead head("G_r", {6, 16, {1, 12}, HeadKind::kCoral});
  ParameterBank bank;
  Rng rng(8);
  head.InitParams(bank, rng);
  CHECK(head.BiasOrderViolations(bank) == 0);
  Tensor& b = bank.at(head.ThresholdBiasName()).value;
  std::vector<double> sorted(b.size());
  for (double& v : sorted) v = 4.0 * StandardNormal(rng);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::copy(sorted.begin(), sorted.end(), b.values().begin());
  Tensor x = Tensor::Matrix(2000, 6);
  for (double& v : x.values()) v = 3.0 * StandardNormal(rng);
  const Tensor p = head.Forward(bank, x);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t k = 0; k + 1 < p.cols(); ++k) violations += p.at(i, k) < p.at(i, k + 1);
  }
  CHECK(violations == 0);
  b[0] = -10.0;
  CHECK(head.BiasOrderViolations(bank) == 1);
}

TEST_CASE("every output variant passes the finite-difference check") {
  for (HeadKind kind : {HeadKind::kCoral, HeadKind::kIndependent, HeadKind::kSoftmax}) {
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
      const OrdinalHead head("G_r", {5, 12, {3, 9}, kind});
      ParameterBank bank;
      Rng rng(100 + rep);
      head.InitParams(bank, rng);
      Tensor x = Tensor::Matrix(4, 5);
      for (double& v : x.values()) v = StandardNormal(rng);
      const std::vector<int> labels{3, 5, 9, 7};
      auto loss = [&] { return head.Loss(head.Forward(bank, x), labels); };
      auto pattern = [&] {
        // Rectifier signs of the trunk, read from its cache.
        OrdinalHeadCache c;
        head.Forward(bank, x, &c);
        std::vector<std::uint8_t> bits;
        for (const Tensor& t : c.trunk.inputs) {
          for (double v : t.values()) bits.push_back(v > 0.0);
        }
        return bits;
      };
      auto analytic = [&] {
        bank.ZeroGrad();
        OrdinalHeadCache c;
        const Tensor p = head.Forward(bank, x, &c);
        Tensor g;
        head.Loss(p, labels, &g);
        head.Backward(bank, c, g);
      };
      GradCheckOptions opts;
      opts.seed = rep;
      const auto r = FiniteDiffCheck(bank, bank.Names(), loss, analytic, pattern, opts);
      CHECK_MESSAGE(r.max_rel_error <= 1e-4, ToString(kind), " ", r.worst);
    }
  }
}

TEST_CASE("head kinds parse and print") {
  for (HeadKind k : {HeadKind::kCoral, HeadKind::kIndependent, HeadKind::kSoftmax}) {
    CHECK(ParseHeadKind(ToString(k)) == k);
  }
  CHECK_THROWS(ParseHeadKind("ordinal"));
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda
