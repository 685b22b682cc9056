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

#ifndef ORUDA_MODEL_H_
#define ORUDA_MODEL_H_

#include <cstdint>
#include <string>

#include "oruda/adversarial.h"
#include "oruda/coral.h"
#include "oruda/labelspace.h"
#include "oruda/network.h"
#include "oruda/order.h"

namespace oruda {

struct ModelShape {
  std::size_t input_dim = 16;
  std::size_t feature_hidden = 128;
  std::size_t feature_dim = 64;
  std::size_t head_hidden = 512;
  std::size_t disc_hidden = 1024;
  double disc_dropout = 0.5;
  HeadKind head = HeadKind::kCoral;
  ClassRange source_range;
};

// The four networks sharing one ParameterBank under the prefixes
// "F/", "G_r/", "G_o/" and "G_d/".
class OrudaModel {
 public:
  OrudaModel() = default;
  explicit OrudaModel(const ModelShape& shape);

  const ModelShape& shape() const { return shape_; }
  const Network& extractor() const { return extractor_; }
  const OrdinalHead& regressor() const { return regressor_; }
  const OrderHead& order() const { return order_; }
  const Discriminator& discriminator() const { return discriminator_; }

  // Fresh parameters drawn from DeriveSeed(seed, kInit, k) per network.
  ParameterBank Init(std::uint64_t seed) const;

  // F(x) in eval mode.
  Tensor Embed(const ParameterBank& bank, const Tensor& x) const;
  // Class predictions of G_r(F(x)).
  std::vector<int> Predict(const ParameterBank& bank, const Tensor& x) const;

 private:
  ModelShape shape_;
  Network extractor_;
  OrdinalHead regressor_;
  OrderHead order_;
  Discriminator discriminator_;
};

}  // namespace oruda

#endif  // ORUDA_MODEL_H_
