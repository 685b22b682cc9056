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

#ifndef ORUDA_LABELSPACE_H_
#define ORUDA_LABELSPACE_H_

#include <optional>
#include <string>
#include <vector>

namespace oruda {

// Contiguous inclusive range of integer class labels.
struct ClassRange {
  int lo = 0;
  int hi = 0;

  int count() const { return hi - lo + 1; }
  bool contains(int y) const { return lo <= y && y <= hi; }
  friend bool operator==(const ClassRange&, const ClassRange&) = default;
};

// Throws std::invalid_argument unless lo <= hi.
ClassRange MakeRange(int lo, int hi);
std::string ToString(const ClassRange& r);

// Side of the common range a private segment lies on.
enum class Segment { kNone, kLow, kHigh };
std::string ToString(Segment s);

struct PrivateSegment {
  ClassRange range;
  Segment side = Segment::kNone;
};

// Label-space configuration: closed set, partial, open set, or both.
enum class Configuration { kCS, kPA, kOS, kOSPA };
std::string ToString(Configuration c);

struct ScenarioSpec {
  ClassRange source;
  ClassRange target;
  ClassRange common;
  std::vector<PrivateSegment> source_private;
  std::vector<PrivateSegment> target_private;
  double xi = 0.0;
  Configuration config = Configuration::kCS;

  ClassRange Union() const;
  bool IsCommon(int y) const { return common.contains(y); }
  // Side of the common range for a target label; kNone for common labels.
  Segment TargetSide(int y) const;
  // Number of private target classes on one side (0 if that side is empty).
  int TargetPrivateCount(Segment side) const;
  std::optional<PrivateSegment> TargetSegment(Segment side) const;
};

// Derives common and private splits, the Jaccard commonness
// xi = |S n T| / |S u T|, and the configuration tag. Throws
// std::invalid_argument("empty common set") for disjoint ranges.
ScenarioSpec DeriveScenario(ClassRange source, ClassRange target);

}  // namespace oruda

#endif  // ORUDA_LABELSPACE_H_
