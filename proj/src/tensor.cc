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

#include "oruda/tensor.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace oruda {
namespace {

std::size_t Product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), values_(Product(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != Product(shape_)) {
    throw std::invalid_argument("tensor: " + std::to_string(values_.size()) +
                                " values do not fill shape " + ShapeString());
  }
}

std::size_t Tensor::rows() const {
  if (shape_.empty()) return 0;
  return shape_.size() == 1 ? 1 : shape_[0];
}

std::size_t Tensor::cols() const {
  if (shape_.empty()) return 0;
  return shape_.back();
}

void Tensor::Fill(double v) { std::fill(values_.begin(), values_.end(), v); }

void Tensor::AppendRow(std::span<const double> row) {
  if (shape_.empty()) shape_ = {0, row.size()};
  if (shape_.size() != 2 || shape_[1] != row.size()) {
    throw std::invalid_argument("AppendRow: width mismatch for " +
                                ShapeString());
  }
  values_.insert(values_.end(), row.begin(), row.end());
  ++shape_[0];
}

std::string Tensor::ShapeString() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) out << 'x';
    out << shape_[i];
  }
  out << ']';
  return out.str();
}

Tensor GatherRows(const Tensor& src, std::span<const std::size_t> indices) {
  const std::size_t cols = src.cols();
  Tensor out = Tensor::Matrix(indices.size(), cols);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= src.rows()) throw std::out_of_range("GatherRows index");
    std::copy_n(src.data() + indices[r] * cols, cols, out.data() + r * cols);
  }
  return out;
}

Tensor ConcatRows(const Tensor& top, const Tensor& bottom) {
  if (top.cols() != bottom.cols()) {
    throw std::invalid_argument("ConcatRows: column mismatch");
  }
  Tensor out = Tensor::Matrix(top.rows() + bottom.rows(), top.cols());
  std::copy(top.values().begin(), top.values().end(), out.data());
  std::copy(bottom.values().begin(), bottom.values().end(),
            out.data() + top.size());
  return out;
}

Tensor SliceRows(const Tensor& src, std::size_t begin, std::size_t count) {
  if (begin + count > src.rows()) throw std::out_of_range("SliceRows");
  Tensor out = Tensor::Matrix(count, src.cols());
  std::copy_n(src.data() + begin * src.cols(), count * src.cols(), out.data());
  return out;
}

}  // namespace oruda
