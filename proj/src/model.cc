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

#include "oruda/model.h"

#include "oruda/rng.h"

namespace oruda {

OrudaModel::OrudaModel(const ModelShape& shape)
    : shape_(shape),
      extractor_("F", NetworkSpec{{LayerSpec::Dense(shape.input_dim, shape.feature_hidden),
                                   LayerSpec::Relu(),
                                   LayerSpec::Dense(shape.feature_hidden, shape.feature_dim)}}),
      regressor_("G_r", OrdinalHeadSpec{shape.feature_dim, shape.head_hidden,
                                        shape.source_range, shape.head}),
      order_("G_o", shape.feature_dim, shape.head_hidden),
      discriminator_("G_d", shape.feature_dim, shape.disc_hidden, shape.disc_dropout) {}

ParameterBank OrudaModel::Init(std::uint64_t seed) const {
  ParameterBank bank;
  Rng r0(DeriveSeed(seed, Stream::kInit, 0));
  extractor_.InitParams(bank, r0);
  Rng r1(DeriveSeed(seed, Stream::kInit, 1));
  regressor_.InitParams(bank, r1);
  Rng r2(DeriveSeed(seed, Stream::kInit, 2));
  order_.InitParams(bank, r2);
  Rng r3(DeriveSeed(seed, Stream::kInit, 3));
  discriminator_.InitParams(bank, r3);
  return bank;
}

Tensor OrudaModel::Embed(const ParameterBank& bank, const Tensor& x) const {
  return extractor_.Forward(bank, x, Mode::kEval);
}

std::vector<int> OrudaModel::Predict(const ParameterBank& bank, const Tensor& x) const {
  return regressor_.Predict(regressor_.Forward(bank, Embed(bank, x)));
}

}  // namespace oruda
