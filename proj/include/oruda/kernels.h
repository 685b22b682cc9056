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

#ifndef ORUDA_KERNELS_H_
#define ORUDA_KERNELS_H_

#include <cstddef>
#include <span>

// Dense numeric kernels used by the network layers. The default entry points
// are cache-blocked and OpenMP-parallel; `reference` holds the plain serial
// loops they are tested and benchmarked against.
//
// All matrices are row-major. Every output element is produced by exactly one
// thread with a fixed summation order, so results do not depend on the number
// of threads.

namespace oruda::kernels {

enum class Trans { kNo, kYes };

// C = alpha * op(A) * op(B) + beta * C, with op(A) m x k and op(B) k x n.
void Gemm(Trans trans_a, Trans trans_b, std::size_t m, std::size_t n,
          std::size_t k, double alpha, const double* a, std::size_t lda,
          const double* b, std::size_t ldb, double beta, double* c,
          std::size_t ldc);

// y[i, :] += bias for every row of an m x n matrix.
void AddRowBias(std::size_t m, std::size_t n, const double* bias, double* y);

// bias_grad[j] += sum_i dy[i, j].
void ColumnSums(std::size_t m, std::size_t n, const double* dy,
                double* bias_grad);

void ReluForward(std::span<const double> x, std::span<double> y);
// dx = dy where x > 0, else 0.
void ReluBackward(std::span<const double> x, std::span<const double> dy,
                  std::span<double> dx);

void SigmoidForward(std::span<const double> x, std::span<double> y);
// dx = dy * y * (1 - y), with y the forward output.
void SigmoidBackward(std::span<const double> y, std::span<const double> dy,
                     std::span<double> dx);

// y = x * mask, elementwise.
void Multiply(std::span<const double> x, std::span<const double> mask,
              std::span<double> y);

// Fused Adam update over one parameter array. `step` is the 1-based step
// count after this update.
void AdamUpdate(std::span<double> value, std::span<const double> grad,
                std::span<double> m, std::span<double> v, double lr,
                double beta1, double beta2, double eps, long step);

namespace reference {

void Gemm(Trans trans_a, Trans trans_b, std::size_t m, std::size_t n,
          std::size_t k, double alpha, const double* a, std::size_t lda,
          const double* b, std::size_t ldb, double beta, double* c,
          std::size_t ldc);
void AddRowBias(std::size_t m, std::size_t n, const double* bias, double* y);
void ColumnSums(std::size_t m, std::size_t n, const double* dy,
                double* bias_grad);
void ReluForward(std::span<const double> x, std::span<double> y);
void ReluBackward(std::span<const double> x, std::span<const double> dy,
                  std::span<double> dx);
void SigmoidForward(std::span<const double> x, std::span<double> y);
void SigmoidBackward(std::span<const double> y, std::span<const double> dy,
                     std::span<double> dx);
void AdamUpdate(std::span<double> value, std::span<const double> grad,
                std::span<double> m, std::span<double> v, double lr,
                double beta1, double beta2, double eps, long step);

}  // namespace reference
}  // namespace oruda::kernels

#endif  // ORUDA_KERNELS_H_
