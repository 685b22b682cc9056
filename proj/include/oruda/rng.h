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

#ifndef ORUDA_RNG_H_
#define ORUDA_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace oruda {

using Rng = std::mt19937_64;

// Stream tags for DeriveSeed. Each random stream in a run is keyed by
// (master seed, tag, epoch, iteration) so that resuming from a checkpoint
// replays the same draws.
enum class Stream : std::uint64_t {
  kInit = 1,
  kSplit,
  kSourceShuffle,
  kTargetShuffle,
  kPairs,
  kDropout,
  kRefresh,
  kRanking,
  kLabels,
  kNoise,
  kCurve,
  kDomainShift,
};

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t master, Stream stream,
                         std::uint64_t a = 0, std::uint64_t b = 0);

// Uniform double in [0, 1) from the top 53 bits.
double Uniform01(Rng& rng);
// Uniform integer in [0, n); n must be positive.
std::size_t UniformIndex(Rng& rng, std::size_t n);
double StandardNormal(Rng& rng);

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> Permutation(std::size_t n, Rng& rng);

}  // namespace oruda

#endif  // ORUDA_RNG_H_
