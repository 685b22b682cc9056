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

#include "oruda/labelspace.h"

#include <algorithm>
#include <stdexcept>

namespace oruda {
namespace {

// Parts of `whole` below and above `common`, tagged by side.
std::vector<PrivateSegment> Complement(const ClassRange& whole,
                                       const ClassRange& common) {
  std::vector<PrivateSegment> out;
  if (whole.lo < common.lo) {
    out.push_back({ClassRange{whole.lo, common.lo - 1}, Segment::kLow});
  }
  if (whole.hi > common.hi) {
    out.push_back({ClassRange{common.hi + 1, whole.hi}, Segment::kHigh});
  }
  return out;
}

}  // namespace

ClassRange MakeRange(int lo, int hi) {
  if (lo > hi) {
    throw std::invalid_argument("class range lo > hi: [" + std::to_string(lo) +
                                "," + std::to_string(hi) + "]");
  }
  return ClassRange{lo, hi};
}

std::string ToString(const ClassRange& r) {
  return "[" + std::to_string(r.lo) + "," + std::to_string(r.hi) + "]";
}

std::string ToString(Segment s) {
  switch (s) {
    case Segment::kLow: return "low";
    case Segment::kHigh: return "high";
    default: return "none";
  }
}

std::string ToString(Configuration c) {
  switch (c) {
    case Configuration::kCS: return "CS";
    case Configuration::kPA: return "PA";
    case Configuration::kOS: return "OS";
    default: return "OSPA";
  }
}

ClassRange ScenarioSpec::Union() const {
  return ClassRange{std::min(source.lo, target.lo),
                    std::max(source.hi, target.hi)};
}

Segment ScenarioSpec::TargetSide(int y) const {
  if (y < common.lo) return Segment::kLow;
  if (y > common.hi) return Segment::kHigh;
  return Segment::kNone;
}

int ScenarioSpec::TargetPrivateCount(Segment side) const {
  auto seg = TargetSegment(side);
  return seg ? seg->range.count() : 0;
}

std::optional<PrivateSegment> ScenarioSpec::TargetSegment(Segment side) const {
  for (const auto& seg : target_private) {
    if (seg.side == side) return seg;
  }
  return std::nullopt;
}

ScenarioSpec DeriveScenario(ClassRange source, ClassRange target) {
  source = MakeRange(source.lo, source.hi);
  target = MakeRange(target.lo, target.hi);
  const int lo = std::max(source.lo, target.lo);
  const int hi = std::min(source.hi, target.hi);
  if (lo > hi) throw std::invalid_argument("empty common set");

  ScenarioSpec spec;
  spec.source = source;
  spec.target = target;
  spec.common = ClassRange{lo, hi};
  spec.source_private = Complement(source, spec.common);
  spec.target_private = Complement(target, spec.common);
  const ClassRange all = spec.Union();
  spec.xi = static_cast<double>(spec.common.count()) / all.count();

  const bool src_priv = !spec.source_private.empty();
  const bool tgt_priv = !spec.target_private.empty();
  if (!src_priv && !tgt_priv) {
    spec.config = Configuration::kCS;
  } else if (src_priv && !tgt_priv) {
    spec.config = Configuration::kPA;
  } else if (!src_priv) {
    spec.config = Configuration::kOS;
  } else {
    spec.config = Configuration::kOSPA;
  }
  return spec;
}

}  // namespace oruda
