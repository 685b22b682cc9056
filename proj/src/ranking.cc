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

#include "oruda/ranking.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "oruda/log.h"
#include "oruda/rng.h"

namespace oruda {

std::vector<PrivateVerdict> MarkTargets(const WeightTable& table) {
  if (table.target_precedence.size() != table.target_weights.size()) {
    throw std::invalid_argument("weight table: precedence and weights misaligned");
  }
  std::vector<PrivateVerdict> out(table.target_weights.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (table.target_weights[i] <= 0.5) {
      out[i].is_private = true;
      out[i].segment = table.target_precedence[i] > 0.5 ? Segment::kLow : Segment::kHigh;
    }
  }
  return out;
}

std::vector<int> PrivateSourceClasses(const WeightTable& table) {
  std::vector<int> out;
  for (const auto& [y, w] : table.source_class_weights) {
    if (w <= 0.5) out.push_back(y);
  }
  return out;
}

namespace {

std::size_t Find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<std::size_t> ComparisonSet::Components(std::size_t* count) const {
  std::vector<std::size_t> parent(n_items);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& r : records) {
    const std::size_t a = Find(parent, r.i), b = Find(parent, r.j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Relabel roots densely in order of first appearance.
  std::vector<std::size_t> label(n_items, n_items), comp(n_items);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n_items; ++i) {
    const std::size_t root = Find(parent, i);
    if (label[root] == n_items) label[root] = next++;
    comp[i] = label[root];
  }
  if (count) *count = next;
  return comp;
}

std::vector<std::size_t> ComparisonSet::Degrees() const {
  std::vector<std::size_t> d(n_items, 0);
  for (const auto& r : records) {
    ++d[r.i];
    ++d[r.j];
  }
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> SamplePairIndices(
    std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n < 2 || max_degree == 0) return pairs;
  if (max_degree >= n - 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  Rng rng(seed);
  std::vector<std::size_t> degree(n, 0);
  std::unordered_set<std::uint64_t> seen;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b || degree[a] >= max_degree || degree[b] >= max_degree) return;
    const std::uint64_t key = static_cast<std::uint64_t>(std::min(a, b)) * n + std::max(a, b);
    if (!seen.insert(key).second) return;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
    ++degree[a];
    ++degree[b];
  };
  const auto perm = Permutation(n, rng);
  if (max_degree >= 2) {
    for (std::size_t k = 0; k < n; ++k) add(perm[k], perm[(k + 1) % n]);
  } else {
    for (std::size_t k = 0; k + 1 < n; k += 2) add(perm[k], perm[k + 1]);
  }
  const std::size_t target = n * max_degree / 2;
  const std::size_t attempts = 20 * target;
  for (std::size_t t = 0; t < attempts && pairs.size() < target; ++t) {
    add(UniformIndex(rng, n), UniformIndex(rng, n));
  }
  return pairs;
}

ComparisonSet SampleComparisons(const Comparator& cmp, const ItemSet& items,
                                std::span<const std::size_t> rows,
                                std::size_t max_degree, std::uint64_t seed) {
  ComparisonSet cs;
  cs.n_items = rows.size();
  const auto pairs = SamplePairIndices(rows.size(), max_degree, seed);
  std::vector<std::size_t> a(pairs.size()), b(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    a[k] = rows[pairs[k].first];
    b[k] = rows[pairs[k].second];
  }
  std::vector<double> forward(pairs.size()), backward(pairs.size());
  cmp.Compare(items, a, items, b, forward);
  cmp.Compare(items, b, items, a, backward);
  cs.records.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double p = std::clamp(0.5 * (forward[k] + 1.0 - backward[k]), 0.0, 1.0);
    cs.records.push_back({pairs[k].first, pairs[k].second, p});
  }
  return cs;
}

namespace {

// Root of W - exp(s) D - lambda s = 0 (strictly decreasing in s).
double SolveItem(double wins, double d, double lambda, double start) {
  auto g = [&](double s) { return wins - std::exp(s) * d - lambda * s; };
  double lo = start - 1.0, hi = start + 1.0;
  while (g(lo) < 0.0) lo -= 2.0 * (hi - lo);
  while (g(hi) > 0.0) hi += 2.0 * (hi - lo);
  double s = std::clamp(start, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double v = g(s);
    if (v == 0.0) return s;
    if (v > 0.0) lo = s; else hi = s;
    const double slope = -std::exp(s) * d - lambda;
    double next = s - v / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) < 1e-14 * (1.0 + std::abs(s))) return next;
    s = next;
  }
  return s;
}

}  // namespace

BradleyTerryFit FitBradleyTerry(const ComparisonSet& cs,
                                const BradleyTerryOptions& options) {
  if (cs.records.empty()) throw std::invalid_argument("empty comparison set");
  const std::size_t n = cs.n_items;
  BradleyTerryFit fit;
  const auto comp = cs.Components(&fit.components);
  if (fit.components > 1) {
    ORUDA_LOG(Warning) << "comparison graph has " << fit.components
                       << " components; fitting each separately";
  }
  std::vector<double> wins(n, 0.0);
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& r : cs.records) {
    if (r.i >= n || r.j >= n || r.i == r.j) throw std::invalid_argument("bad comparison record");
    wins[r.j] += r.p;
    wins[r.i] += 1.0 - r.p;
    adj[r.i].push_back(r.j);
    adj[r.j].push_back(r.i);
  }
  std::vector<std::size_t> comp_size(fit.components, 0);
  for (std::size_t i = 0; i < n; ++i) ++comp_size[comp[i]];

  std::vector<double> s(n, 0.0), next(n, 0.0), comp_mean(fit.components);
  for (fit.iterations = 0; fit.iterations < options.max_iterations; ++fit.iterations) {
    for (std::size_t i = 0; i < n; ++i) {
      if (adj[i].empty()) {
        next[i] = 0.0;
        continue;
      }
      double d = 0.0;
      for (std::size_t j : adj[i]) d += 1.0 / (std::exp(s[i]) + std::exp(s[j]));
      const double target = SolveItem(wins[i], d, options.lambda, s[i]);
      next[i] = s[i] + std::clamp(target - s[i], -options.max_step, options.max_step);
    }
    std::fill(comp_mean.begin(), comp_mean.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) comp_mean[comp[i]] += next[i];
    for (std::size_t c = 0; c < fit.components; ++c) comp_mean[c] /= static_cast<double>(comp_size[c]);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] -= comp_mean[comp[i]];
      change = std::max(change, std::abs(next[i] - s[i]));
    }
    s.swap(next);
    if (change < options.tolerance) {
      fit.converged = true;
      ++fit.iterations;
      break;
    }
  }
  fit.scores = std::move(s);
  return fit;
}

std::vector<int> RanksToClasses(std::span<const double> scores, Segment segment,
                                int m_private, ClassRange common) {
  if (segment == Segment::kNone) throw std::invalid_argument("segment must be low or high");
  if (m_private < 1) throw std::invalid_argument("m_private must be >= 1");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Position 0 is the item nearest the common range.
  if (segment == Segment::kHigh) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  }
  const std::size_t m = static_cast<std::size_t>(m_private);
  const std::size_t base = n / m, extra = n % m;
  std::vector<int> classes(n);
  std::size_t pos = 0;
  for (std::size_t g = 0; g < m && pos < n; ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    const int y = segment == Segment::kHigh ? common.hi + 1 + static_cast<int>(g)
                                            : common.lo - 1 - static_cast<int>(g);
    for (std::size_t k = 0; k < size; ++k) classes[order[pos++]] = y;
  }
  return classes;
}

std::vector<SegmentRanking> RankPrivateTargets(
    const Comparator& cmp, const ItemSet& targets,
    std::span<const PrivateVerdict> verdicts, const ScenarioSpec& scenario,
    std::size_t max_degree, std::uint64_t seed) {
  std::vector<SegmentRanking> out;
  for (Segment side : {Segment::kLow, Segment::kHigh}) {
    SegmentRanking seg;
    seg.segment = side;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      if (verdicts[i].segment == side) seg.rows.push_back(i);
    }
    if (seg.rows.empty()) continue;
    const int m = scenario.TargetPrivateCount(side);
    if (m == 0) {
      ORUDA_LOG(Warning) << seg.rows.size() << " targets marked private on the "
                         << ToString(side) << " side, which has no private classes";
      continue;
    }
    if (seg.rows.size() == 1) {
      seg.scores = {0.0};
      seg.components = 1;
    } else {
      const ComparisonSet cs = SampleComparisons(
          cmp, targets, seg.rows, max_degree,
          DeriveSeed(seed, Stream::kRanking, static_cast<std::uint64_t>(side)));
      const BradleyTerryFit fit = FitBradleyTerry(cs);
      seg.scores = fit.scores;
      seg.components = fit.components;
    }
    seg.classes = RanksToClasses(seg.scores, side, m, scenario.common);
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace oruda
