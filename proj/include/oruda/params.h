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

#ifndef ORUDA_PARAMS_H_
#define ORUDA_PARAMS_H_

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oruda/tensor.h"

namespace oruda {

struct Parameter {
  Tensor value;
  Tensor grad;
  Tensor m;  // first moment
  Tensor v;  // second moment
  long step = 0;
};

// Named trainable tensors with gradients and Adam state. Names are
// slash-separated with the owning network first, e.g. "G_d/dense1/w".
class ParameterBank {
 public:
  // Registers a parameter; throws std::invalid_argument on duplicates.
  void Add(const std::string& name, Tensor init);

  bool Contains(const std::string& name) const;
  Parameter& at(const std::string& name);
  const Parameter& at(const std::string& name) const;

  std::vector<std::string> Names() const;
  std::vector<std::string> NamesWithPrefix(std::string_view prefix) const;
  std::size_t size() const { return params_.size(); }

  void ZeroGrad();
  void ZeroGrad(std::string_view prefix);

  // Total scalar count across all parameters.
  std::size_t ScalarCount() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::map<std::string, Parameter, std::less<>> params_;
};

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// One Adam update with bias correction on every parameter whose name
// starts with one of `prefixes` (all parameters if empty).
void AdamStep(ParameterBank& bank, double lr,
              const std::vector<std::string>& prefixes = {},
              const AdamOptions& options = {});

// Checkpoint text format:
//   #oruda-params v1
//   value <name> <shape> <values...>
//   m <name> <shape> <values...>
//   v <name> <shape> <values...>
//   step <name> <count>
// <shape> is dims joined by 'x'. Values use shortest round-trip decimals,
// so save/load is exact.
std::string FormatParams(const ParameterBank& bank);
ParameterBank ParseParams(const std::string& text);
void SaveParams(const ParameterBank& bank, const std::string& path);
ParameterBank LoadParams(const std::string& path);

}  // namespace oruda

#endif  // ORUDA_PARAMS_H_
