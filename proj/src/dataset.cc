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

#include "oruda/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "oruda/rng.h"

namespace oruda {
namespace {

void AppendDouble(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && end == s.data() + s.size();
}

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

ClassRange ParseRangeField(std::string_view value, std::size_t line) {
  const auto parts = SplitOn(value, ':');
  int lo = 0, hi = 0;
  if (parts.size() != 2 || !ParseNumber(parts[0], lo) ||
      !ParseNumber(parts[1], hi) || lo > hi) {
    throw FormatError(line, "bad range '" + std::string(value) + "'");
  }
  return ClassRange{lo, hi};
}

}  // namespace

std::string ToString(Domain d) {
  return d == Domain::kSource ? "source" : "target";
}

Dataset::Dataset(std::size_t dim, ClassRange source_range,
                 ClassRange target_range)
    : dim_(dim),
      source_range_(MakeRange(source_range.lo, source_range.hi)),
      target_range_(MakeRange(target_range.lo, target_range.hi)),
      features_(Tensor::Matrix(0, dim)) {
  if (dim == 0) throw std::invalid_argument("dataset: feature dimension 0");
}

void Dataset::Add(const Instance& instance) {
  if (instance.features.size() != dim_) {
    throw std::invalid_argument(
        "dataset: instance " + std::to_string(instance.id) + " has dimension " +
        std::to_string(instance.features.size()) + ", expected " +
        std::to_string(dim_));
  }
  if (instance.label && !RangeOf(instance.domain).contains(*instance.label)) {
    throw std::invalid_argument(
        "dataset: label " + std::to_string(*instance.label) + " outside " +
        ToString(instance.domain) + " range " +
        ToString(RangeOf(instance.domain)));
  }
  ids_.push_back(instance.id);
  domains_.push_back(instance.domain);
  labels_.push_back(instance.label);
  features_.AppendRow(instance.features);
}

Instance Dataset::at(std::size_t i) const {
  const auto row = features_.row(i);
  return Instance{ids_[i], domains_[i], {row.begin(), row.end()}, labels_[i]};
}

std::vector<int> Dataset::Labels() const {
  std::vector<int> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (!labels_[i]) {
      throw std::logic_error("dataset: instance " + std::to_string(ids_[i]) +
                             " has no label");
    }
    out[i] = *labels_[i];
  }
  return out;
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  Dataset out(dim_, source_range_, target_range_);
  for (std::size_t i : indices) out.Add(at(i));
  return out;
}

Dataset Dataset::WithoutLabels() const {
  Dataset out = *this;
  std::fill(out.labels_.begin(), out.labels_.end(), std::nullopt);
  return out;
}

std::vector<int> HiddenLabels(const Dataset& data) { return data.Labels(); }

std::string FormatFeatureTable(const Dataset& data) {
  std::string out = "#dim=" + std::to_string(data.dim()) +
                    " source_range=" + std::to_string(data.source_range().lo) +
                    ":" + std::to_string(data.source_range().hi) +
                    " target_range=" + std::to_string(data.target_range().lo) +
                    ":" + std::to_string(data.target_range().hi) + "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += std::to_string(data.id(i));
    out += '\t';
    out += ToString(data.domain(i));
    out += '\t';
    out += data.label(i) ? std::to_string(*data.label(i)) : "-";
    out += '\t';
    const auto row = data.features().row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      AppendDouble(out, row[j]);
    }
    out += '\n';
  }
  return out;
}

void WriteFeatureTable(const Dataset& data, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << FormatFeatureTable(data);
  if (!file) throw std::runtime_error("write failed: " + path);
}

Dataset ParseFeatureTable(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::optional<std::size_t> dim;
  std::optional<ClassRange> source_range, target_range;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] != '#') throw FormatError(line_no, "missing header line");
    for (auto field : SplitOn(std::string_view(line).substr(1), ' ')) {
      const auto eq = field.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = field.substr(0, eq);
      const auto value = field.substr(eq + 1);
      if (key == "dim") {
        std::size_t d = 0;
        if (!ParseNumber(value, d) || d == 0) {
          throw FormatError(line_no, "bad dim");
        }
        dim = d;
      } else if (key == "source_range") {
        source_range = ParseRangeField(value, line_no);
      } else if (key == "target_range") {
        target_range = ParseRangeField(value, line_no);
      }
    }
    break;
  }
  if (!dim || !source_range || !target_range) {
    throw FormatError(line_no, "header needs dim, source_range, target_range");
  }

  Dataset data(*dim, *source_range, *target_range);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cols = SplitOn(line, '\t');
    if (cols.size() != 4) {
      throw FormatError(line_no, "expected 4 tab-separated columns, got " +
                                     std::to_string(cols.size()));
    }
    Instance inst;
    if (!ParseNumber(cols[0], inst.id)) throw FormatError(line_no, "bad id");
    if (cols[1] == "source") {
      inst.domain = Domain::kSource;
    } else if (cols[1] == "target") {
      inst.domain = Domain::kTarget;
    } else {
      throw FormatError(line_no, "bad domain '" + std::string(cols[1]) + "'");
    }
    if (cols[2] != "-") {
      int y = 0;
      if (!ParseNumber(cols[2], y)) throw FormatError(line_no, "bad label");
      if (!data.RangeOf(inst.domain).contains(y)) {
        throw FormatError(line_no, "label " + std::to_string(y) +
                                       " outside declared " +
                                       ToString(inst.domain) + " range");
      }
      inst.label = y;
    }
    for (auto f : SplitOn(cols[3], ',')) {
      double v = 0.0;
      if (!ParseNumber(f, v)) {
        throw FormatError(line_no, "bad feature '" + std::string(f) + "'");
      }
      inst.features.push_back(v);
    }
    if (inst.features.size() != *dim) {
      throw FormatError(line_no, "dimension " +
                                     std::to_string(inst.features.size()) +
                                     " != " + std::to_string(*dim));
    }
    data.Add(inst);
  }
  return data;
}

Dataset LoadFeatureTable(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return ParseFeatureTable(buf.str());
}

SplitResult Split(const Dataset& data, double ratio, std::uint64_t seed) {
  if (data.empty()) throw std::invalid_argument("split: empty dataset");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("split: ratio must be in (0,1)");
  }
  const std::size_t n = data.size();
  // The epsilon absorbs representation error such as 0.29 * 100.
  const auto n_train =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  Rng rng(DeriveSeed(seed, Stream::kSplit));
  auto perm = Permutation(n, rng);
  std::vector<std::size_t> train(perm.begin(), perm.begin() + n_train);
  std::vector<std::size_t> test(perm.begin() + n_train, perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {data.Subset(train), data.Subset(test)};
}

std::vector<std::vector<std::size_t>> Batches(std::size_t n,
                                              std::size_t batch_size,
                                              std::uint64_t epoch_seed) {
  if (batch_size == 0) throw std::invalid_argument("batches: batch_size 0");
  Rng rng(epoch_seed);
  const auto perm = Permutation(n, rng);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < n; i += batch_size) {
    const std::size_t end = std::min(n, i + batch_size);
    out.emplace_back(perm.begin() + i, perm.begin() + end);
  }
  return out;
}

}  // namespace oruda
