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

#include <algorithm>
#include <cmath>
#include <vector>

#include "oruda/kernels.h"

namespace oruda::kernels {
namespace {

// Register tile and cache block sizes. The micro-kernel accumulates an
// kMr x kNr tile of C in local storage over one kKc-deep slice of k.
constexpr std::size_t kMr = 6;
constexpr std::size_t kNr = 16;
constexpr std::size_t kMc = 96;
constexpr std::size_t kKc = 256;
constexpr std::size_t kNc = 2048;

// Below this many multiply-adds the packing overhead dominates.
constexpr std::size_t kSmallGemm = 8 * 1024;

// Elementwise loops only fork threads above this length.
constexpr std::size_t kParallelLength = 1 << 15;

inline double At(Trans t, const double* x, std::size_t ld, std::size_t row,
                 std::size_t col) {
  return t == Trans::kNo ? x[row * ld + col] : x[col * ld + row];
}

// Packs op(B)[pc:pc+kc, jc:jc+nc] into kNr-wide strips, k-major inside each
// strip, zero-padding the ragged last strip.
void PackB(Trans tb, const double* b, std::size_t ldb, std::size_t pc,
           std::size_t kc, std::size_t jc, std::size_t nc, double* out) {
  const std::size_t strips = (nc + kNr - 1) / kNr;
#pragma omp parallel for schedule(static) if (strips * kc > 4096)
  for (std::size_t s = 0; s < strips; ++s) {
    double* dst = out + s * kc * kNr;
    const std::size_t j0 = jc + s * kNr;
    const std::size_t width = std::min(kNr, jc + nc - j0);
    for (std::size_t p = 0; p < kc; ++p) {
      std::size_t jj = 0;
      if (tb == Trans::kNo) {
        const double* src = b + (pc + p) * ldb + j0;
        for (; jj < width; ++jj) dst[p * kNr + jj] = src[jj];
      } else {
        for (; jj < width; ++jj) dst[p * kNr + jj] = b[(j0 + jj) * ldb + pc + p];
      }
      for (; jj < kNr; ++jj) dst[p * kNr + jj] = 0.0;
    }
  }
}

// Packs op(A)[ic:ic+mc, pc:pc+kc] into kMr-tall strips, k-major inside each.
void PackA(Trans ta, const double* a, std::size_t lda, std::size_t ic,
           std::size_t mc, std::size_t pc, std::size_t kc, double* out) {
  const std::size_t strips = (mc + kMr - 1) / kMr;
  for (std::size_t s = 0; s < strips; ++s) {
    double* dst = out + s * kc * kMr;
    const std::size_t i0 = ic + s * kMr;
    const std::size_t height = std::min(kMr, ic + mc - i0);
    for (std::size_t p = 0; p < kc; ++p) {
      std::size_t ii = 0;
      for (; ii < height; ++ii) dst[p * kMr + ii] = At(ta, a, lda, i0 + ii, pc + p);
      for (; ii < kMr; ++ii) dst[p * kMr + ii] = 0.0;
    }
  }
}

void MicroKernel(std::size_t kc, const double* __restrict ap,
                 const double* __restrict bp, double alpha, double* c,
                 std::size_t ldc, std::size_t rows, std::size_t cols) {
  double acc[kMr][kNr] = {};
  for (std::size_t p = 0; p < kc; ++p) {
    const double* __restrict brow = bp + p * kNr;
    const double* __restrict acol = ap + p * kMr;
#pragma GCC unroll 6
    for (std::size_t ii = 0; ii < kMr; ++ii) {
      const double av = acol[ii];
#pragma GCC unroll 16
      for (std::size_t jj = 0; jj < kNr; ++jj) acc[ii][jj] += av * brow[jj];
    }
  }
  for (std::size_t ii = 0; ii < rows; ++ii) {
    double* crow = c + ii * ldc;
    for (std::size_t jj = 0; jj < cols; ++jj) crow[jj] += alpha * acc[ii][jj];
  }
}

void ScaleC(std::size_t m, std::size_t n, double beta, double* c,
            std::size_t ldc) {
  if (beta == 1.0) return;
  for (std::size_t i = 0; i < m; ++i) {
    double* row = c + i * ldc;
    if (beta == 0.0) {
      std::fill(row, row + n, 0.0);
    } else {
      for (std::size_t j = 0; j < n; ++j) row[j] *= beta;
    }
  }
}

}  // namespace

void Gemm(Trans trans_a, Trans trans_b, std::size_t m, std::size_t n,
          std::size_t k, double alpha, const double* a, std::size_t lda,
          const double* b, std::size_t ldb, double beta, double* c,
          std::size_t ldc) {
  if (m == 0 || n == 0) return;
  if (m * n * k < kSmallGemm) {
    reference::Gemm(trans_a, trans_b, m, n, k, alpha, a, lda, b, ldb, beta, c,
                    ldc);
    return;
  }
  ScaleC(m, n, beta, c, ldc);
  if (k == 0 || alpha == 0.0) return;

  std::vector<double> packed_b(kKc * ((std::min(n, kNc) + kNr - 1) / kNr) * kNr);
  for (std::size_t jc = 0; jc < n; jc += kNc) {
    const std::size_t nc = std::min(kNc, n - jc);
    for (std::size_t pc = 0; pc < k; pc += kKc) {
      const std::size_t kc = std::min(kKc, k - pc);
      PackB(trans_b, b, ldb, pc, kc, jc, nc, packed_b.data());
      const std::size_t blocks = (m + kMc - 1) / kMc;
#pragma omp parallel if (blocks > 1)
      {
        std::vector<double> packed_a(kMc * kKc);
#pragma omp for schedule(static)
        for (std::size_t blk = 0; blk < blocks; ++blk) {
          const std::size_t ic = blk * kMc;
          const std::size_t mc = std::min(kMc, m - ic);
          PackA(trans_a, a, lda, ic, mc, pc, kc, packed_a.data());
          for (std::size_t jr = 0; jr < nc; jr += kNr) {
            const double* bp = packed_b.data() + (jr / kNr) * kc * kNr;
            const std::size_t cols = std::min(kNr, nc - jr);
            for (std::size_t ir = 0; ir < mc; ir += kMr) {
              const double* ap = packed_a.data() + (ir / kMr) * kc * kMr;
              MicroKernel(kc, ap, bp, alpha, c + (ic + ir) * ldc + jc + jr, ldc,
                          std::min(kMr, mc - ir), cols);
            }
          }
        }
      }
    }
  }
}

void AddRowBias(std::size_t m, std::size_t n, const double* bias, double* y) {
#pragma omp parallel for schedule(static) if (m * n > kParallelLength)
  for (std::size_t i = 0; i < m; ++i) {
    double* row = y + i * n;
#pragma omp simd
    for (std::size_t j = 0; j < n; ++j) row[j] += bias[j];
  }
}

void ColumnSums(std::size_t m, std::size_t n, const double* dy,
                double* bias_grad) {
  // Parallel over columns so each sum keeps the serial row order.
#pragma omp parallel for schedule(static) if (m * n > kParallelLength)
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += dy[i * n + j];
    bias_grad[j] += sum;
  }
}

void ReluForward(std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
#pragma omp parallel for simd schedule(static) if (n > kParallelLength)
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] < 0.0 ? 0.0 : x[i];  // NaN propagates
}

void ReluBackward(std::span<const double> x, std::span<const double> dy,
                  std::span<double> dx) {
  const std::size_t n = x.size();
#pragma omp parallel for simd schedule(static) if (n > kParallelLength)
  for (std::size_t i = 0; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : (x[i] <= 0.0 ? 0.0 : x[i]);
}

void SigmoidForward(std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
#pragma omp parallel for schedule(static) if (n > kParallelLength)
  for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 / (1.0 + std::exp(-x[i]));
}

void SigmoidBackward(std::span<const double> y, std::span<const double> dy,
                     std::span<double> dx) {
  const std::size_t n = y.size();
#pragma omp parallel for simd schedule(static) if (n > kParallelLength)
  for (std::size_t i = 0; i < n; ++i) dx[i] = dy[i] * y[i] * (1.0 - y[i]);
}

void Multiply(std::span<const double> x, std::span<const double> mask,
              std::span<double> y) {
  const std::size_t n = x.size();
#pragma omp parallel for simd schedule(static) if (n > kParallelLength)
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * mask[i];
}

void AdamUpdate(std::span<double> value, std::span<const double> grad,
                std::span<double> m, std::span<double> v, double lr,
                double beta1, double beta2, double eps, long step) {
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
  const std::size_t n = value.size();
#pragma omp parallel for schedule(static) if (n > kParallelLength)
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    value[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
  }
}

}  // namespace oruda::kernels
