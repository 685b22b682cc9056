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

#include "oruda/network.h"

#include <cmath>
#include <stdexcept>

#include "oruda/kernels.h"

namespace oruda {

using kernels::Trans;

std::size_t NetworkSpec::InputDim() const {
  for (const auto& l : layers) {
    if (l.kind == LayerSpec::Kind::kDense) return l.in;
  }
  return 0;
}

std::size_t NetworkSpec::OutputDim() const {
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    if (it->kind == LayerSpec::Kind::kDense) return it->out;
  }
  return 0;
}

void NetworkSpec::Validate() const {
  std::size_t width = 0;
  bool seen_dense = false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    switch (l.kind) {
      case LayerSpec::Kind::kDense:
        if (l.in == 0 || l.out == 0) {
          throw std::invalid_argument("layer " + std::to_string(i) +
                                      ": dense layer with zero width");
        }
        if (seen_dense && l.in != width) {
          throw std::invalid_argument(
              "layer " + std::to_string(i) + ": input " + std::to_string(l.in) +
              " does not match previous output " + std::to_string(width));
        }
        seen_dense = true;
        width = l.out;
        break;
      case LayerSpec::Kind::kDropout:
        if (!(l.rate >= 0.0 && l.rate < 1.0)) {
          throw std::invalid_argument("layer " + std::to_string(i) +
                                      ": dropout rate outside [0,1)");
        }
        break;
      default:
        break;
    }
  }
  if (!seen_dense) throw std::invalid_argument("network has no dense layer");
}

Network::Network(std::string name, NetworkSpec spec)
    : name_(std::move(name)), spec_(std::move(spec)) {
  spec_.Validate();
}

std::string Network::WeightName(std::size_t layer) const {
  return name_ + "/dense" + std::to_string(layer) + "/w";
}

std::string Network::BiasName(std::size_t layer) const {
  return name_ + "/dense" + std::to_string(layer) + "/b";
}

void Network::InitParams(ParameterBank& bank, Rng& rng) const {
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const auto& l = spec_.layers[i];
    if (l.kind != LayerSpec::Kind::kDense) continue;
    const double limit = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    Tensor w = Tensor::Matrix(l.in, l.out);
    for (double& v : w.values()) v = (2.0 * Uniform01(rng) - 1.0) * limit;
    bank.Add(WeightName(i), std::move(w));
    bank.Add(BiasName(i), Tensor::Vector(l.out));
  }
}

Tensor Network::Forward(const ParameterBank& bank, const Tensor& input,
                        Mode mode, std::uint64_t dropout_seed,
                        ForwardCache* cache) const {
  if (input.cols() != spec_.InputDim()) {
    throw std::invalid_argument(name_ + ": input width " +
                                std::to_string(input.cols()) + " != " +
                                std::to_string(spec_.InputDim()));
  }
  if (cache) {
    cache->inputs.assign(spec_.layers.size(), Tensor());
    cache->masks.assign(spec_.layers.size(), Tensor());
  }
  Tensor x = input;
  const std::size_t n = input.rows();
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const auto& l = spec_.layers[i];
    Tensor y;
    switch (l.kind) {
      case LayerSpec::Kind::kDense: {
        const Tensor& w = bank.at(WeightName(i)).value;
        const Tensor& b = bank.at(BiasName(i)).value;
        y = Tensor::Matrix(n, l.out);
        kernels::Gemm(Trans::kNo, Trans::kNo, n, l.out, l.in, 1.0, x.data(),
                      l.in, w.data(), l.out, 0.0, y.data(), l.out);
        kernels::AddRowBias(n, l.out, b.data(), y.data());
        break;
      }
      case LayerSpec::Kind::kRelu:
        y = Tensor(x.shape());
        kernels::ReluForward(x.values(), y.values());
        break;
      case LayerSpec::Kind::kSigmoid:
        y = Tensor(x.shape());
        kernels::SigmoidForward(x.values(), y.values());
        break;
      case LayerSpec::Kind::kDropout: {
        if (mode == Mode::kEval || l.rate == 0.0) {
          y = x;
          if (cache) cache->masks[i] = Tensor(x.shape(), 1.0);
          break;
        }
        const double keep = 1.0 - l.rate;
        Tensor mask(x.shape());
        Rng rng(DeriveSeed(dropout_seed, Stream::kDropout, i));
        for (double& m : mask.values()) m = Uniform01(rng) < keep ? 1.0 / keep : 0.0;
        y = Tensor(x.shape());
        kernels::Multiply(x.values(), mask.values(), y.values());
        if (cache) cache->masks[i] = std::move(mask);
        break;
      }
    }
    if (cache) cache->inputs[i] = std::move(x);
    x = std::move(y);
  }
  if (cache) cache->output = x;
  return x;
}

Tensor Network::Backward(ParameterBank& bank, const ForwardCache& cache,
                         const Tensor& grad_output) const {
  if (cache.inputs.size() != spec_.layers.size()) {
    throw std::logic_error(name_ + ": backward without matching forward cache");
  }
  Tensor g = grad_output;
  for (std::size_t idx = spec_.layers.size(); idx-- > 0;) {
    const auto& l = spec_.layers[idx];
    const Tensor& x = cache.inputs[idx];
    const std::size_t n = x.rows();
    Tensor gx;
    switch (l.kind) {
      case LayerSpec::Kind::kDense: {
        Parameter& w = bank.at(WeightName(idx));
        Parameter& b = bank.at(BiasName(idx));
        kernels::Gemm(Trans::kYes, Trans::kNo, l.in, l.out, n, 1.0, x.data(),
                      l.in, g.data(), l.out, 1.0, w.grad.data(), l.out);
        kernels::ColumnSums(n, l.out, g.data(), b.grad.data());
        gx = Tensor::Matrix(n, l.in);
        kernels::Gemm(Trans::kNo, Trans::kYes, n, l.in, l.out, 1.0, g.data(),
                      l.out, w.value.data(), l.out, 0.0, gx.data(), l.in);
        break;
      }
      case LayerSpec::Kind::kRelu:
        gx = Tensor(x.shape());
        kernels::ReluBackward(x.values(), g.values(), gx.values());
        break;
      case LayerSpec::Kind::kSigmoid: {
        // The sigmoid output is the next layer's input, or the final output.
        const Tensor& y = idx + 1 < spec_.layers.size() ? cache.inputs[idx + 1]
                                                        : cache.output;
        gx = Tensor(x.shape());
        kernels::SigmoidBackward(y.values(), g.values(), gx.values());
        break;
      }
      case LayerSpec::Kind::kDropout:
        gx = Tensor(x.shape());
        kernels::Multiply(g.values(), cache.masks[idx].values(), gx.values());
        break;
    }
    g = std::move(gx);
  }
  return g;
}

std::vector<std::uint8_t> Network::ActivationPattern(const ParameterBank& bank,
                                                     const Tensor& input) const {
  ForwardCache cache;
  Forward(bank, input, Mode::kEval, 0, &cache);
  std::vector<std::uint8_t> pattern;
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    if (spec_.layers[i].kind != LayerSpec::Kind::kRelu) continue;
    for (double v : cache.inputs[i].values()) pattern.push_back(v > 0.0);
  }
  return pattern;
}

}  // namespace oruda
