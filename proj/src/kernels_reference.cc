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

// Serial reference kernels. Plain loops in textbook order; used as the
// ground truth for the blocked kernels and as the benchmark baseline.

#include <cmath>

#include "oruda/kernels.h"

namespace oruda::kernels::reference {

void Gemm(Trans trans_a, Trans trans_b, std::size_t m, std::size_t n,
          std::size_t k, double alpha, const double* a, std::size_t lda,
          const double* b, std::size_t ldb, double beta, double* c,
          std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        const double av = trans_a == Trans::kNo ? a[i * lda + p] : a[p * lda + i];
        const double bv = trans_b == Trans::kNo ? b[p * ldb + j] : b[j * ldb + p];
        sum += av * bv;
      }
      double& out = c[i * ldc + j];
      out = (beta == 0.0 ? 0.0 : beta * out) + alpha * sum;
    }
  }
}

void AddRowBias(std::size_t m, std::size_t n, const double* bias, double* y) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i * n + j] += bias[j];
}

void ColumnSums(std::size_t m, std::size_t n, const double* dy,
                double* bias_grad) {
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += dy[i * n + j];
    bias_grad[j] += sum;
  }
}

void ReluForward(std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] < 0.0 ? 0.0 : x[i];  // NaN propagates
}

void ReluBackward(std::span<const double> x, std::span<const double> dy,
                  std::span<double> dx) {
  for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] > 0.0 ? dy[i] : (x[i] <= 0.0 ? 0.0 : x[i]);
}

void SigmoidForward(std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.0 / (1.0 + std::exp(-x[i]));
}

void SigmoidBackward(std::span<const double> y, std::span<const double> dy,
                     std::span<double> dx) {
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] = dy[i] * y[i] * (1.0 - y[i]);
}

void AdamUpdate(std::span<double> value, std::span<const double> grad,
                std::span<double> m, std::span<double> v, double lr,
                double beta1, double beta2, double eps, long step) {
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
  for (std::size_t i = 0; i < value.size(); ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    value[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
  }
}

}  // namespace oruda::kernels::reference
