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

#ifndef ORUDA_DATASET_H_
#define ORUDA_DATASET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oruda/labelspace.h"
#include "oruda/tensor.h"

namespace oruda {

enum class Domain { kSource, kTarget };
std::string ToString(Domain d);

struct Instance {
  std::int64_t id = 0;
  Domain domain = Domain::kSource;
  std::vector<double> features;
  std::optional<int> label;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Raised by the feature-table reader; carries the 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable-after-construction collection of instances sharing one feature
// dimension. Features are stored as an n x D matrix for batching.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dim, ClassRange source_range, ClassRange target_range);

  // Validates dimension and that the label lies in its domain's range.
  void Add(const Instance& instance);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dim() const { return dim_; }
  ClassRange source_range() const { return source_range_; }
  ClassRange target_range() const { return target_range_; }
  ClassRange RangeOf(Domain d) const {
    return d == Domain::kSource ? source_range_ : target_range_;
  }

  Instance at(std::size_t i) const;
  std::int64_t id(std::size_t i) const { return ids_[i]; }
  Domain domain(std::size_t i) const { return domains_[i]; }
  std::optional<int> label(std::size_t i) const { return labels_[i]; }
  const Tensor& features() const { return features_; }

  // All labels; throws std::logic_error if any instance is unlabeled.
  std::vector<int> Labels() const;

  Dataset Subset(std::span<const std::size_t> indices) const;
  Dataset WithoutLabels() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t dim_ = 0;
  ClassRange source_range_;
  ClassRange target_range_;
  std::vector<std::int64_t> ids_;
  std::vector<Domain> domains_;
  std::vector<std::optional<int>> labels_;
  Tensor features_;
};

// What training may see of the target domain: features and ids, no labels.
class UnlabeledView {
 public:
  explicit UnlabeledView(const Dataset& data) : data_(&data) {}
  std::size_t size() const { return data_->size(); }
  std::size_t dim() const { return data_->dim(); }
  std::int64_t id(std::size_t i) const { return data_->id(i); }
  const Tensor& features() const { return data_->features(); }

 private:
  const Dataset* data_;
};

// Evaluation-only access to the hidden labels of a target dataset. Training
// code never calls this.
std::vector<int> HiddenLabels(const Dataset& data);

// Columnar text format:
//   #dim=D source_range=lo:hi target_range=lo:hi
//   id<TAB>domain<TAB>label_or_dash<TAB>f1,f2,...,fD
// Values are written in shortest round-trip decimal form.
void WriteFeatureTable(const Dataset& data, const std::string& path);
std::string FormatFeatureTable(const Dataset& data);
Dataset LoadFeatureTable(const std::string& path);
Dataset ParseFeatureTable(const std::string& text);

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Deterministic random partition; the train part has floor(ratio * n)
// instances. Both parts keep the original relative order.
SplitResult Split(const Dataset& data, double ratio, std::uint64_t seed);

// Shuffled index batches covering 0..n-1; the last batch may be short.
std::vector<std::vector<std::size_t>> Batches(std::size_t n,
                                              std::size_t batch_size,
                                              std::uint64_t epoch_seed);

}  // namespace oruda

#endif  // ORUDA_DATASET_H_
