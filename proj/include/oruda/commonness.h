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

#ifndef ORUDA_COMMONNESS_H_
#define ORUDA_COMMONNESS_H_

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "oruda/labelspace.h"
#include "oruda/order.h"
#include "oruda/params.h"
#include "oruda/tensor.h"

namespace oruda {

enum class FilterMode { kBinary, kSmooth };

struct FilterConfig {
  double width = 0.9;  // full passband width centred at 0.5
  int order = 6;
  FilterMode mode = FilterMode::kSmooth;

  void Validate() const;
};

// 0 at exactly 0 or 1, else 1.
double BinaryFilter(double x);
// Butterworth magnitude response on the unit interval:
//   (1 + ((x - 0.5) / (width / 2))^(2 * order))^(-1/2)
// equal to 1 at 0.5 and 1/sqrt(2) at 0.5 +- width / 2.
double SmoothFilter(double x, const FilterConfig& cfg);
double ApplyFilter(double x, const FilterConfig& cfg);

// Items a comparator can address by index. The learned comparator reads
// embeddings F(x); the oracle reads labels.
struct ItemSet {
  const Tensor* embeddings = nullptr;
  std::span<const int> labels;

  std::size_t size() const {
    return embeddings ? embeddings->rows() : labels.size();
  }
};

// Estimates p(a[i] precedes b[j]) for index pairs.
class Comparator {
 public:
  virtual ~Comparator() = default;
  virtual void Compare(const ItemSet& a, std::span<const std::size_t> ia,
                       const ItemSet& b, std::span<const std::size_t> ib,
                       std::span<double> out) const = 0;
  double CompareOne(const ItemSet& a, std::size_t i, const ItemSet& b,
                    std::size_t j) const;
};

// The trained order head on frozen parameters; pairs are evaluated in
// chunks through the network.
class ModelComparator final : public Comparator {
 public:
  ModelComparator(const OrderHead& head, const ParameterBank& bank,
                  std::size_t chunk = 1024)
      : head_(&head), bank_(&bank), chunk_(chunk) {}
  void Compare(const ItemSet& a, std::span<const std::size_t> ia,
               const ItemSet& b, std::span<const std::size_t> ib,
               std::span<double> out) const override;

 private:
  const OrderHead* head_;
  const ParameterBank* bank_;
  std::size_t chunk_;
};

// Ground-truth comparator on labels. With split_ties = false this is the
// hard order relation 1[y1 <= y2 + tau]. With split_ties = true it returns
// 1 for y1 < y2 + tau, 1/2 at equality and 0 above; at tau = 0 this makes
// precedence exactly 0 or 1 only for labels strictly outside the other set.
class OracleComparator final : public Comparator {
 public:
  OracleComparator(int tau, bool split_ties) : tau_(tau), split_ties_(split_ties) {}
  static OracleComparator Exact() { return OracleComparator(0, true); }
  void Compare(const ItemSet& a, std::span<const std::size_t> ia,
               const ItemSet& b, std::span<const std::size_t> ib,
               std::span<double> out) const override;

 private:
  int tau_;
  bool split_ties_;
};

class ConstantComparator final : public Comparator {
 public:
  explicit ConstantComparator(double p) : p_(p) {}
  void Compare(const ItemSet&, std::span<const std::size_t>, const ItemSet&,
               std::span<const std::size_t>, std::span<double> out) const override;

 private:
  double p_;
};

// Mean of p(x_t precedes x_s) over the given source indices.
double TargetPrecedence(const Comparator& cmp, const ItemSet& targets,
                        std::size_t target, const ItemSet& sources,
                        std::span<const std::size_t> source_sample);

// Mean over the class members of p(x_s precedes x_t), x_t over the sample.
double SourceClassPrecedence(const Comparator& cmp, const ItemSet& sources,
                             std::span<const std::size_t> class_members,
                             const ItemSet& targets,
                             std::span<const std::size_t> target_sample);

struct WeightTable {
  std::vector<std::int64_t> target_ids;
  std::vector<double> target_weights;     // aligned with target_ids
  std::vector<double> target_precedence;  // p(x_t precedes D_s)
  std::map<int, double> source_class_weights;
  std::map<int, double> source_class_precedence;
  int epoch_stamp = 0;

  // All weights 1 (the warm-up table).
  static WeightTable Uniform(std::span<const std::int64_t> target_ids,
                             ClassRange source_range);

  double SourceWeight(int label) const;
  // Per-instance source weights for a batch of labels.
  std::vector<double> SourceWeights(std::span<const int> labels) const;
};

struct RefreshConfig {
  FilterConfig filter;
  std::size_t source_sample = 100;  // l_s
  std::size_t target_sample = 100;  // l_t
  // Members per source class compared against their target samples.
  std::size_t class_sample = std::numeric_limits<std::size_t>::max();
};

// Recomputes every target-instance and source-class weight from the
// comparator. A sample size >= the set size uses the whole set. Source
// classes without instances get weight 1 and a warning.
WeightTable RefreshWeights(const Comparator& cmp, const ItemSet& sources,
                           std::span<const int> source_labels,
                           ClassRange source_range, const ItemSet& targets,
                           std::span<const std::int64_t> target_ids,
                           const RefreshConfig& cfg, std::uint64_t seed,
                           int epoch);

struct WeightSummary {
  double mean_target_weight = 0.0;
  double private_fraction = 0.0;  // targets with weight <= 0.5
  std::vector<std::size_t> histogram;  // 10 equal bins over [0, 1]
  std::size_t private_source_classes = 0;
};
WeightSummary Summarize(const WeightTable& table);

// Uniform sample of `count` distinct indices from [0, n), or all of them if
// count >= n; returned sorted.
std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t count, Rng& rng);

}  // namespace oruda

#endif  // ORUDA_COMMONNESS_H_
