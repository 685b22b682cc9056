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

#ifndef ORUDA_NETWORK_H_
#define ORUDA_NETWORK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "oruda/params.h"
#include "oruda/rng.h"
#include "oruda/tensor.h"

namespace oruda {

enum class Mode { kTrain, kEval };

struct LayerSpec {
  enum class Kind { kDense, kRelu, kSigmoid, kDropout };
  Kind kind = Kind::kDense;
  std::size_t in = 0;
  std::size_t out = 0;
  double rate = 0.0;  // dropout probability

  static LayerSpec Dense(std::size_t in, std::size_t out) {
    return {Kind::kDense, in, out, 0.0};
  }
  static LayerSpec Relu() { return {Kind::kRelu}; }
  static LayerSpec Sigmoid() { return {Kind::kSigmoid}; }
  static LayerSpec Dropout(double rate) { return {Kind::kDropout, 0, 0, rate}; }
};

struct NetworkSpec {
  std::vector<LayerSpec> layers;

  std::size_t InputDim() const;
  std::size_t OutputDim() const;
  // Throws std::invalid_argument if adjacent dense layers disagree, there is
  // no dense layer, or a dropout rate is outside [0, 1).
  void Validate() const;
};

// Intermediates kept by Forward for Backward: the input of each layer,
// dropout masks (already scaled by 1/keep) and the final output.
struct ForwardCache {
  std::vector<Tensor> inputs;
  std::vector<Tensor> masks;
  Tensor output;
};

// A feed-forward stack whose weights live in a ParameterBank under
// "<name>/dense<i>/w" (in x out) and "<name>/dense<i>/b".
class Network {
 public:
  Network() = default;
  Network(std::string name, NetworkSpec spec);

  const std::string& name() const { return name_; }
  const NetworkSpec& spec() const { return spec_; }
  std::string WeightName(std::size_t layer) const;
  std::string BiasName(std::size_t layer) const;

  // Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases.
  void InitParams(ParameterBank& bank, Rng& rng) const;

  // Train mode applies inverted dropout drawn from `dropout_seed`; eval mode
  // treats dropout as identity.
  Tensor Forward(const ParameterBank& bank, const Tensor& input, Mode mode,
                 std::uint64_t dropout_seed = 0,
                 ForwardCache* cache = nullptr) const;

  // Adds parameter gradients into the bank and returns d(loss)/d(input).
  Tensor Backward(ParameterBank& bank, const ForwardCache& cache,
                  const Tensor& grad_output) const;

  // Sign pattern of every rectifier input; a change between two parameter
  // settings means a kink was crossed.
  std::vector<std::uint8_t> ActivationPattern(const ParameterBank& bank,
                                              const Tensor& input) const;

 private:
  std::string name_;
  NetworkSpec spec_;
};

}  // namespace oruda

#endif  // ORUDA_NETWORK_H_
