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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oruda/adversarial.h"
#include "oruda/gradcheck.h"
#include "oruda/rng.h"

namespace oruda {
namespace {

Tensor Gaussian(std::size_t rows, std::size_t cols, Rng& rng, double shift = 0.0) {
  Tensor t = Tensor::Matrix(rows, cols);
  for (double& v : t.values()) v = shift + StandardNormal(rng);
  return t;
}

DomainBatch RandomBatch(std::size_t n_s, std::size_t n_t, std::size_t dim,
                        Rng& rng, std::uint64_t dropout_seed) {
  DomainBatch b;
  b.source = Gaussian(n_s, dim, rng, 0.5);
  b.target = Gaussian(n_t, dim, rng, -0.5);
  for (std::size_t i = 0; i < n_s; ++i) b.w_source.push_back(Uniform01(rng));
  for (std::size_t i = 0; i < n_t; ++i) b.w_target.push_back(Uniform01(rng));
  b.dropout_seed = dropout_seed;
  return b;
}

// Rectifier signs of the train-mode joint pass, with the batch's dropout draw.
std::vector<std::uint8_t> TrainPattern(const Network& net, const ParameterBank& bank,
                                       const DomainBatch& b) {
  ForwardCache cache;
  net.Forward(bank, ConcatRows(b.source, b.target), Mode::kTrain, b.dropout_seed, &cache);
  std::vector<std::uint8_t> bits;
  for (std::size_t k = 0; k < net.spec().layers.size(); ++k) {
    if (net.spec().layers[k].kind != LayerSpec::Kind::kRelu) continue;
    for (double v : cache.inputs[k].values()) bits.push_back(v > 0.0);
  }
  return bits;
}

TEST_SUITE("adversarial") {

TEST_CASE("domain loss reference values") {
  const std::vector<double> half(4, 0.5), ones(4, 1.0), zeros(4, 0.0);
  CHECK(DomainLoss(half, half, ones, ones).loss == doctest::Approx(2 * std::log(0.5)));
  CHECK(DomainLoss(half, half, ones, ones).loss == doctest::Approx(-1.3863).epsilon(1e-4));
  const auto perfect = DomainLoss(ones, zeros, ones, ones);
  CHECK(perfect.loss <= 0.0);
  CHECK(perfect.loss > -1e-9);
  const auto none = DomainLoss(half, half, zeros, zeros);
  CHECK(none.loss == 0.0);
  for (double g : none.grad_source) CHECK(g == 0.0);
  for (double g : none.grad_target) CHECK(g == 0.0);
  CHECK_THROWS(DomainLoss(half, half, std::vector<double>(3, 1.0), ones));
}

TEST_CASE("domain loss gradient matches central differences") {
  Rng rng(4);
  std::vector<double> ds(5), dt(3), ws(5), wt(3);
  for (auto* v : {&ds, &dt}) for (double& x : *v) x = 0.1 + 0.8 * Uniform01(rng);
  for (auto* v : {&ws, &wt}) for (double& x : *v) x = Uniform01(rng);
  const auto r = DomainLoss(ds, dt, ws, wt);
  const double h = 1e-6;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto up = ds, dn = ds;
    up[i] += h;
    dn[i] -= h;
    const double fd = (DomainLoss(up, dt, ws, wt).loss - DomainLoss(dn, dt, ws, wt).loss) / (2 * h);
    CHECK(r.grad_source[i] == doctest::Approx(fd).epsilon(1e-6));
  }
  for (std::size_t i = 0; i < dt.size(); ++i) {
    auto up = dt, dn = dt;
    up[i] += h;
    dn[i] -= h;
    const double fd = (DomainLoss(ds, up, ws, wt).loss - DomainLoss(ds, dn, ws, wt).loss) / (2 * h);
    CHECK(r.grad_target[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("discriminator architecture") {
  const auto spec = DiscriminatorSpec(64);
  REQUIRE(spec.layers.size() == 8);
  CHECK(spec.layers[0].out == 1024);
  CHECK(spec.layers[2].rate == 0.5);
  CHECK(spec.layers[6].out == 1);
  CHECK(spec.layers[7].kind == LayerSpec::Kind::kSigmoid);
  CHECK(spec.InputDim() == 64);
}

TEST_CASE("discriminator passes the finite-difference check") {
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const Discriminator disc("G_d", 5, 12, 0.3);
    ParameterBank bank;
    Rng rng(700 + rep);
    disc.InitParams(bank, rng);
    for (auto& [name, p] : bank) {
      for (double& v : p.value.values()) v += 0.1 * StandardNormal(rng);
    }
    DomainBatch batch = RandomBatch(4, 3, 5, rng, 99 + rep);
    auto pattern = [&] { return TrainPattern(disc.network(), bank, batch); };
    GradCheckOptions opts;
    opts.seed = rep;

    // The bank receives -dL/dtheta, so check against -L.
    auto neg_loss = [&] { return -disc.Evaluate(bank, batch); };
    auto analytic = [&] {
      bank.ZeroGrad();
      disc.Pass(bank, batch);
    };
    auto r = FiniteDiffCheck(bank, bank.Names(), neg_loss, analytic, pattern, opts);
    CHECK(r.checked > 0);
    CHECK(r.max_rel_error <= 1e-4);

    const DomainPass pass = disc.ConfusionGradients(bank, batch);
    auto loss = [&] { return disc.Evaluate(bank, batch); };
    Tensor gs = pass.grad_source;
    auto rs = CheckGradient(batch.source.values(), gs.values(), loss, pattern, opts, "source");
    Tensor gt = pass.grad_target;
    auto rt = CheckGradient(batch.target.values(), gt.values(), loss, pattern, opts, "target");
    CHECK(rs.max_rel_error <= 1e-4);
    CHECK(rt.max_rel_error <= 1e-4);
  }
}

TEST_CASE("zero-weight instances contribute no gradient") {
  const Discriminator disc("G_d", 4, 16, 0.5);
  ParameterBank bank;
  Rng rng(3);
  disc.InitParams(bank, rng);
  DomainBatch batch = RandomBatch(6, 6, 4, rng, 17);
  batch.w_source[2] = 0.0;
  batch.w_target[4] = 0.0;

  bank.ZeroGrad();
  const DomainPass a = disc.Pass(bank, batch);
  const ParameterBank first = bank;
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(a.grad_source.at(2, c) == 0.0);
    CHECK(a.grad_target.at(4, c) == 0.0);
  }
  // Moving the zero-weight instances changes no parameter gradient.
  for (std::size_t c = 0; c < 4; ++c) {
    batch.source.at(2, c) += 3.0;
    batch.target.at(4, c) -= 3.0;
  }
  bank.ZeroGrad();
  disc.Pass(bank, batch);
  for (const auto& name : bank.Names()) {
    const auto& g1 = first.at(name).grad.values();
    const auto& g2 = bank.at(name).grad.values();
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-13));
  }
}

TEST_CASE("one alternation round moves the loss in opposite directions") {
  const Discriminator disc("G_d", 3, 16, 0.0);
  ParameterBank bank;
  Rng rng(21);
  disc.InitParams(bank, rng);
  bank.Add("F/w", Tensor::Vector(2, 1.0));
  DomainBatch batch = RandomBatch(16, 16, 3, rng, 5);
  for (double& w : batch.w_source) w = 1.0;
  for (double& w : batch.w_target) w = 1.0;

  const double before = disc.Evaluate(bank, batch);
  const double reported = disc.DiscriminatorStep(bank, batch, 1e-3);
  CHECK(reported == doctest::Approx(before).epsilon(1e-14));
  const double after_d = disc.Evaluate(bank, batch);
  CHECK(after_d >= before);
  CHECK(bank.at("F/w").value == Tensor::Vector(2, 1.0));

  // Features step against the confusion gradient with G_d frozen.
  const ParameterBank frozen = bank;
  const DomainPass pass = disc.ConfusionGradients(bank, batch);
  for (const auto& name : bank.Names()) CHECK(bank.at(name).grad == frozen.at(name).grad);
  DomainBatch moved = batch;
  const double step = 1e-3;
  for (std::size_t i = 0; i < moved.source.size(); ++i) moved.source[i] -= step * pass.grad_source[i];
  for (std::size_t i = 0; i < moved.target.size(); ++i) moved.target[i] -= step * pass.grad_target[i];
  CHECK(disc.Evaluate(bank, moved) <= after_d);
}

TEST_CASE("on mixed features the trained discriminator stays near one half") {
  const Discriminator disc("G_d", 4, 32, 0.5);
  ParameterBank bank;
  Rng rng(8);
  disc.InitParams(bank, rng);
  for (int it = 0; it < 400; ++it) {
    DomainBatch b;
    b.source = Gaussian(64, 4, rng);
    b.target = Gaussian(64, 4, rng);
    b.w_source.assign(64, 1.0);
    b.w_target.assign(64, 1.0);
    b.dropout_seed = static_cast<std::uint64_t>(it);
    disc.DiscriminatorStep(bank, b, 1e-3);
  }
  const Tensor d = disc.Forward(bank, Gaussian(4000, 4, rng), Mode::kEval);
  double mean = 0.0;
  for (double v : d.values()) mean += v;
  mean /= static_cast<double>(d.size());
  CHECK(mean >= 0.45);
  CHECK(mean <= 0.55);
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda
