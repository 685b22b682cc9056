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

#include <cmath>
#include <random>
#include <vector>

#include "oruda/kernels.h"

namespace oruda::kernels {
namespace {

std::vector<double> Random(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

TEST_SUITE("kernels") {

TEST_CASE("blocked gemm matches the reference for every transpose and shape") {
  const std::size_t shapes[][3] = {{1, 1, 1},    {7, 5, 3},     {6, 16, 256},
                                   {97, 33, 65}, {128, 200, 300}, {300, 17, 513}};
  unsigned seed = 1;
  for (const auto& s : shapes) {
    const std::size_t m = s[0], n = s[1], k = s[2];
    for (Trans ta : {Trans::kNo, Trans::kYes}) {
      for (Trans tb : {Trans::kNo, Trans::kYes}) {
        const auto a = Random(m * k, seed++);
        const auto b = Random(k * n, seed++);
        auto c = Random(m * n, seed++);
        auto c_ref = c;
        const std::size_t lda = ta == Trans::kNo ? k : m;
        const std::size_t ldb = tb == Trans::kNo ? n : k;
        Gemm(ta, tb, m, n, k, 0.7, a.data(), lda, b.data(), ldb, -0.3, c.data(), n);
        reference::Gemm(ta, tb, m, n, k, 0.7, a.data(), lda, b.data(), ldb, -0.3,
                        c_ref.data(), n);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
          worst = std::max(worst, std::abs(c[i] - c_ref[i]) / (1.0 + std::abs(c_ref[i])));
        }
        CHECK(worst < 1e-12);
      }
    }
  }
}

TEST_CASE("gemm with beta zero ignores garbage in C") {
  const std::size_t m = 64, n = 64, k = 64;
  const auto a = Random(m * k, 3), b = Random(k * n, 4);
  std::vector<double> c(m * n, std::nan("")), c_ref(m * n, 0.0);
  Gemm(Trans::kNo, Trans::kNo, m, n, k, 1.0, a.data(), k, b.data(), n, 0.0, c.data(), n);
  reference::Gemm(Trans::kNo, Trans::kNo, m, n, k, 1.0, a.data(), k, b.data(), n, 0.0,
                  c_ref.data(), n);
  for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(std::abs(c[i] - c_ref[i]) < 1e-12);
}

TEST_CASE("elementwise kernels agree with the reference exactly") {
  const std::size_t n = (1u << 16) + 3;
  const auto x = Random(n, 5), dy = Random(n, 6);
  std::vector<double> y(n), y_ref(n), dx(n), dx_ref(n);
  ReluForward(x, y);
  reference::ReluForward(x, y_ref);
  CHECK(y == y_ref);
  ReluBackward(x, dy, dx);
  reference::ReluBackward(x, dy, dx_ref);
  CHECK(dx == dx_ref);
  SigmoidForward(x, y);
  reference::SigmoidForward(x, y_ref);
  CHECK(y == y_ref);
  SigmoidBackward(y, dy, dx);
  reference::SigmoidBackward(y_ref, dy, dx_ref);
  CHECK(dx == dx_ref);

  const std::size_t rows = 300, cols = 257;
  const auto bias = Random(cols, 7);
  auto mat = Random(rows * cols, 8);
  auto mat_ref = mat;
  AddRowBias(rows, cols, bias.data(), mat.data());
  reference::AddRowBias(rows, cols, bias.data(), mat_ref.data());
  CHECK(mat == mat_ref);
  std::vector<double> sums(cols, 0.0), sums_ref(cols, 0.0);
  ColumnSums(rows, cols, mat.data(), sums.data());
  reference::ColumnSums(rows, cols, mat.data(), sums_ref.data());
  CHECK(sums == sums_ref);
}

TEST_CASE("adam kernel agrees with the reference") {
  const std::size_t n = (1u << 16) + 11;
  auto v1 = Random(n, 9), v2 = v1;
  const auto g = Random(n, 10);
  std::vector<double> m1(n, 0.0), s1(n, 0.0), m2(n, 0.0), s2(n, 0.0);
  for (long step = 1; step <= 3; ++step) {
    AdamUpdate(v1, g, m1, s1, 1e-3, 0.9, 0.999, 1e-8, step);
    reference::AdamUpdate(v2, g, m2, s2, 1e-3, 0.9, 0.999, 1e-8, step);
  }
  CHECK(v1 == v2);
  CHECK(m1 == m2);
  CHECK(s1 == s2);
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda::kernels
