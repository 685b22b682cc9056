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

#include "oruda/commonness.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oruda/log.h"
#include "oruda/rng.h"

namespace oruda {

void FilterConfig::Validate() const {
  if (!(width > 0.0 && width <= 1.0)) {
    throw std::invalid_argument("filter width must be in (0,1]");
  }
  if (order <= 0 || order % 2 != 0) {
    throw std::invalid_argument("filter order must be an even positive integer");
  }
}

double BinaryFilter(double x) { return (x == 0.0 || x == 1.0) ? 0.0 : 1.0; }

double SmoothFilter(double x, const FilterConfig& cfg) {
  const double r = (x - 0.5) / (0.5 * cfg.width);
  return 1.0 / std::sqrt(1.0 + std::pow(r * r, cfg.order));
}

double ApplyFilter(double x, const FilterConfig& cfg) {
  return cfg.mode == FilterMode::kBinary ? BinaryFilter(x) : SmoothFilter(x, cfg);
}

double Comparator::CompareOne(const ItemSet& a, std::size_t i, const ItemSet& b,
                              std::size_t j) const {
  double out = 0.0;
  Compare(a, std::span<const std::size_t>(&i, 1), b,
          std::span<const std::size_t>(&j, 1), std::span<double>(&out, 1));
  return out;
}

void ModelComparator::Compare(const ItemSet& a, std::span<const std::size_t> ia,
                              const ItemSet& b, std::span<const std::size_t> ib,
                              std::span<double> out) const {
  if (!a.embeddings || !b.embeddings) {
    throw std::invalid_argument("model comparator needs embeddings");
  }
  for (std::size_t start = 0; start < ia.size(); start += chunk_) {
    const std::size_t n = std::min(chunk_, ia.size() - start);
    const Tensor first = GatherRows(*a.embeddings, ia.subspan(start, n));
    const Tensor second = GatherRows(*b.embeddings, ib.subspan(start, n));
    const Tensor probs = head_->Forward(*bank_, first, second);
    std::copy(probs.values().begin(), probs.values().end(), out.begin() + start);
  }
}

void OracleComparator::Compare(const ItemSet& a, std::span<const std::size_t> ia,
                               const ItemSet& b, std::span<const std::size_t> ib,
                               std::span<double> out) const {
  for (std::size_t n = 0; n < ia.size(); ++n) {
    const int y1 = a.labels[ia[n]];
    const int y2 = b.labels[ib[n]] + tau_;
    if (!split_ties_) {
      out[n] = y1 <= y2 ? 1.0 : 0.0;
    } else {
      out[n] = y1 < y2 ? 1.0 : (y1 == y2 ? 0.5 : 0.0);
    }
  }
}

void ConstantComparator::Compare(const ItemSet&, std::span<const std::size_t>,
                                 const ItemSet&, std::span<const std::size_t>,
                                 std::span<double> out) const {
  std::fill(out.begin(), out.end(), p_);
}

double TargetPrecedence(const Comparator& cmp, const ItemSet& targets,
                        std::size_t target, const ItemSet& sources,
                        std::span<const std::size_t> source_sample) {
  if (source_sample.empty()) throw std::invalid_argument("empty source sample");
  std::vector<std::size_t> ia(source_sample.size(), target);
  std::vector<double> p(source_sample.size());
  cmp.Compare(targets, ia, sources, source_sample, p);
  return std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
}

double SourceClassPrecedence(const Comparator& cmp, const ItemSet& sources,
                             std::span<const std::size_t> class_members,
                             const ItemSet& targets,
                             std::span<const std::size_t> target_sample) {
  if (class_members.empty() || target_sample.empty()) {
    throw std::invalid_argument("empty class or target sample");
  }
  std::vector<std::size_t> ia, ib;
  for (std::size_t s : class_members) {
    for (std::size_t t : target_sample) {
      ia.push_back(s);
      ib.push_back(t);
    }
  }
  std::vector<double> p(ia.size());
  cmp.Compare(sources, ia, targets, ib, p);
  return std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
}

WeightTable WeightTable::Uniform(std::span<const std::int64_t> target_ids,
                                 ClassRange source_range) {
  WeightTable t;
  t.target_ids.assign(target_ids.begin(), target_ids.end());
  t.target_weights.assign(target_ids.size(), 1.0);
  t.target_precedence.assign(target_ids.size(), 0.5);
  for (int y = source_range.lo; y <= source_range.hi; ++y) {
    t.source_class_weights[y] = 1.0;
    t.source_class_precedence[y] = 0.5;
  }
  return t;
}

double WeightTable::SourceWeight(int label) const {
  auto it = source_class_weights.find(label);
  return it == source_class_weights.end() ? 1.0 : it->second;
}

std::vector<double> WeightTable::SourceWeights(std::span<const int> labels) const {
  std::vector<double> w(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) w[i] = SourceWeight(labels[i]);
  return w;
}

std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (count >= n) return idx;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(idx[i], idx[i + UniformIndex(rng, n - i)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

WeightTable RefreshWeights(const Comparator& cmp, const ItemSet& sources,
                           std::span<const int> source_labels,
                           ClassRange source_range, const ItemSet& targets,
                           std::span<const std::int64_t> target_ids,
                           const RefreshConfig& cfg, std::uint64_t seed,
                           int epoch) {
  cfg.filter.Validate();
  const std::size_t n_s = sources.size();
  const std::size_t n_t = targets.size();
  if (n_s == 0 || n_t == 0) throw std::invalid_argument("refresh: empty domain");
  if (source_labels.size() != n_s || target_ids.size() != n_t) {
    throw std::invalid_argument("refresh: size mismatch");
  }
  Rng rng(DeriveSeed(seed, Stream::kRefresh, static_cast<std::uint64_t>(epoch)));

  WeightTable table;
  table.epoch_stamp = epoch;
  table.target_ids.assign(target_ids.begin(), target_ids.end());

  // Target precedence: each target against its own source sample.
  {
    std::vector<std::size_t> ia, ib;
    std::vector<std::size_t> counts(n_t);
    for (std::size_t t = 0; t < n_t; ++t) {
      const auto sample = SampleIndices(n_s, cfg.source_sample, rng);
      counts[t] = sample.size();
      ia.insert(ia.end(), sample.size(), t);
      ib.insert(ib.end(), sample.begin(), sample.end());
    }
    std::vector<double> p(ia.size());
    cmp.Compare(targets, ia, sources, ib, p);
    table.target_precedence.resize(n_t);
    table.target_weights.resize(n_t);
    std::size_t offset = 0;
    for (std::size_t t = 0; t < n_t; ++t) {
      double sum = 0.0;
      for (std::size_t k = 0; k < counts[t]; ++k) sum += p[offset + k];
      offset += counts[t];
      const double prec = std::clamp(sum / static_cast<double>(counts[t]), 0.0, 1.0);
      table.target_precedence[t] = prec;
      table.target_weights[t] = ApplyFilter(prec, cfg.filter);
    }
  }

  // Source class precedence: every instance of the class against its own
  // target sample.
  {
    std::vector<std::vector<std::size_t>> members(
        static_cast<std::size_t>(source_range.count()));
    for (std::size_t s = 0; s < n_s; ++s) {
      if (!source_range.contains(source_labels[s])) {
        throw std::invalid_argument("refresh: source label outside range");
      }
      members[static_cast<std::size_t>(source_labels[s] - source_range.lo)].push_back(s);
    }
    std::vector<std::size_t> ia, ib;
    std::vector<std::size_t> pairs_per_class(members.size(), 0);
    for (std::size_t c = 0; c < members.size(); ++c) {
      for (std::size_t m : SampleIndices(members[c].size(), cfg.class_sample, rng)) {
        const std::size_t s = members[c][m];
        const auto sample = SampleIndices(n_t, cfg.target_sample, rng);
        pairs_per_class[c] += sample.size();
        ia.insert(ia.end(), sample.size(), s);
        ib.insert(ib.end(), sample.begin(), sample.end());
      }
    }
    std::vector<double> p(ia.size());
    cmp.Compare(sources, ia, targets, ib, p);
    std::size_t offset = 0;
    for (std::size_t c = 0; c < members.size(); ++c) {
      const int y = source_range.lo + static_cast<int>(c);
      if (pairs_per_class[c] == 0) {
        ORUDA_LOG(Warning) << "source class " << y
                           << " has no training instances; weight set to 1";
        table.source_class_precedence[y] = 0.5;
        table.source_class_weights[y] = 1.0;
        continue;
      }
      double sum = 0.0;
      for (std::size_t k = 0; k < pairs_per_class[c]; ++k) sum += p[offset + k];
      offset += pairs_per_class[c];
      const double prec =
          std::clamp(sum / static_cast<double>(pairs_per_class[c]), 0.0, 1.0);
      table.source_class_precedence[y] = prec;
      table.source_class_weights[y] = ApplyFilter(prec, cfg.filter);
    }
  }
  return table;
}

WeightSummary Summarize(const WeightTable& table) {
  WeightSummary s;
  s.histogram.assign(10, 0);
  for (double w : table.target_weights) {
    s.mean_target_weight += w;
    if (w <= 0.5) s.private_fraction += 1.0;
    const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(w * 10.0));
    ++s.histogram[bin];
  }
  if (!table.target_weights.empty()) {
    const double n = static_cast<double>(table.target_weights.size());
    s.mean_target_weight /= n;
    s.private_fraction /= n;
  }
  for (const auto& [y, w] : table.source_class_weights) {
    if (w <= 0.5) ++s.private_source_classes;
  }
  return s;
}

}  // namespace oruda
