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

#include "oruda/gradcheck.h"
#include "oruda/network.h"
#include "oruda/params.h"
#include "oruda/rng.h"
#include "oruda/tensor.h"

namespace oruda {
namespace {

Tensor RandomMatrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
  Tensor t = Tensor::Matrix(r, c);
  for (double& v : t.values()) v = scale * StandardNormal(rng);
  return t;
}

// Squared loss 0.5 * |net(x) - target|^2 with analytic gradients through
// Backward; returns the merged check over parameters and the input.
GradCheckResult CheckNetwork(const NetworkSpec& spec, std::size_t batch,
                             std::uint64_t seed, double eps = 1e-5) {
  const Network net("net", spec);
  ParameterBank bank;
  Rng rng(seed);
  net.InitParams(bank, rng);
  // Non-zero biases so that rectifier and logistic inputs are generic.
  for (auto& [name, p] : bank) {
    for (double& v : p.value.values()) v += 0.1 * StandardNormal(rng);
  }
  Tensor x = RandomMatrix(batch, spec.InputDim(), rng);
  const Tensor target = RandomMatrix(batch, spec.OutputDim(), rng);
  const std::uint64_t dropout_seed = seed + 99;

  auto loss = [&] {
    const Tensor y = net.Forward(bank, x, Mode::kTrain, dropout_seed);
    double l = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) l += 0.5 * (y[i] - target[i]) * (y[i] - target[i]);
    return l;
  };
  auto grad_out = [&](ForwardCache& cache) {
    const Tensor y = net.Forward(bank, x, Mode::kTrain, dropout_seed, &cache);
    Tensor g(y.shape());
    for (std::size_t i = 0; i < y.size(); ++i) g[i] = y[i] - target[i];
    return g;
  };
  auto pattern = [&] { return net.ActivationPattern(bank, x); };
  GradCheckOptions opts;
  opts.epsilon = eps;
  opts.seed = seed;

  std::vector<std::string> names = bank.Names();
  GradCheckResult result = FiniteDiffCheck(
      bank, names, loss,
      [&] {
        bank.ZeroGrad();
        ForwardCache cache;
        const Tensor g = grad_out(cache);
        net.Backward(bank, cache, g);
      },
      pattern, opts);

  bank.ZeroGrad();
  ForwardCache cache;
  const Tensor g = grad_out(cache);
  const Tensor dx = net.Backward(bank, cache, g);
  Merge(result, CheckGradient(x.values(), dx.values(), loss, pattern, opts, "input"));
  return result;
}

TEST_SUITE("neural") {

TEST_CASE("tensor row helpers") {
  Tensor t;
  t.AppendRow(std::vector<double>{1, 2});
  t.AppendRow(std::vector<double>{3, 4});
  t.AppendRow(std::vector<double>{5, 6});
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  const std::vector<std::size_t> idx{2, 0};
  const Tensor g = GatherRows(t, idx);
  CHECK(g.at(0, 0) == 5);
  CHECK(g.at(1, 1) == 2);
  const Tensor c = ConcatRows(g, t);
  CHECK(c.rows() == 5);
  CHECK(SliceRows(c, 2, 3) == t);
  CHECK_THROWS(Tensor({2, 2}, std::vector<double>{1, 2, 3}));
  CHECK_THROWS(ConcatRows(t, Tensor::Matrix(1, 3)));
}

TEST_CASE("single dense layer matches central differences to 1e-6") {
  const auto r = CheckNetwork({{LayerSpec::Dense(5, 4)}}, 6, 11);
  CHECK(r.checked > 0);
  CHECK(r.max_rel_error <= 1e-6);
}

TEST_CASE("every layer type passes the finite-difference check") {
  const NetworkSpec specs[] = {
      {{LayerSpec::Dense(6, 8), LayerSpec::Relu(), LayerSpec::Dense(8, 3)}},
      {{LayerSpec::Dense(6, 8), LayerSpec::Sigmoid(), LayerSpec::Dense(8, 3)}},
      {{LayerSpec::Dense(6, 8), LayerSpec::Dropout(0.5), LayerSpec::Dense(8, 3)}},
      {{LayerSpec::Dense(6, 8), LayerSpec::Relu(), LayerSpec::Dropout(0.3),
        LayerSpec::Dense(8, 8), LayerSpec::Relu(), LayerSpec::Dense(8, 1), LayerSpec::Sigmoid()}},
  };
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    for (const auto& spec : specs) {
      const auto r = CheckNetwork(spec, 5, 1000 + rep);
      CHECK(r.max_rel_error <= 1e-4);
    }
  }
}

TEST_CASE("logistic derivative at zero is one quarter") {
  const Network net("s", {{LayerSpec::Dense(1, 1), LayerSpec::Sigmoid()}});
  ParameterBank bank;
  bank.Add(net.WeightName(0), Tensor({1, 1}, std::vector<double>{1.0}));
  bank.Add(net.BiasName(0), Tensor::Vector(1));
  Tensor x = Tensor::Matrix(1, 1, 0.0);
  ForwardCache cache;
  const Tensor y = net.Forward(bank, x, Mode::kEval, 0, &cache);
  CHECK(y[0] == 0.5);
  const Tensor dx = net.Backward(bank, cache, Tensor::Matrix(1, 1, 1.0));
  CHECK(dx[0] == 0.25);
  const double h = 1e-5;
  Tensor xp = Tensor::Matrix(1, 1, h), xm = Tensor::Matrix(1, 1, -h);
  const double numeric =
      (net.Forward(bank, xp, Mode::kEval)[0] - net.Forward(bank, xm, Mode::kEval)[0]) / (2 * h);
  CHECK(numeric == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("rectifier kinks are detected and skipped") {
  const Network net("r", {{LayerSpec::Dense(1, 1), LayerSpec::Relu()}});
  ParameterBank bank;
  bank.Add(net.WeightName(0), Tensor({1, 1}, std::vector<double>{1.0}));
  bank.Add(net.BiasName(0), Tensor::Vector(1));
  Tensor x = Tensor::Matrix(1, 1, 0.0);
  const std::vector<double> analytic{0.5};
  const auto r = CheckGradient(
      x.values(), analytic, [&] { return net.Forward(bank, x, Mode::kEval)[0]; },
      [&] { return net.ActivationPattern(bank, x); }, GradCheckOptions{});
  CHECK(r.skipped == 1);
  CHECK(r.checked == 0);
}

TEST_CASE("dropout is deterministic per seed and unbiased over seeds") {
  const Network net("d", {{LayerSpec::Dense(4, 4), LayerSpec::Dropout(0.5)}});
  ParameterBank bank;
  Rng rng(3);
  net.InitParams(bank, rng);
  const Tensor x = RandomMatrix(2, 4, rng);
  CHECK(net.Forward(bank, x, Mode::kTrain, 7) == net.Forward(bank, x, Mode::kTrain, 7));
  const Tensor eval = net.Forward(bank, x, Mode::kEval);
  Tensor mean(eval.shape());
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    const Tensor y = net.Forward(bank, x, Mode::kTrain, static_cast<std::uint64_t>(s));
    for (std::size_t i = 0; i < y.size(); ++i) mean[i] += y[i] / seeds;
  }
  // Each draw is eval * Bernoulli(keep) / keep, with standard deviation
  // |eval| * sqrt(rate / keep); allow five standard errors.
  const double se = std::sqrt(0.5 / 0.5) / std::sqrt(static_cast<double>(seeds));
  for (std::size_t i = 0; i < eval.size(); ++i) {
    CHECK(std::abs(mean[i] - eval[i]) <= 5.0 * se * std::abs(eval[i]) + 1e-12);
  }
}

TEST_CASE("adam leaves parameters unchanged under zero gradients") {
  ParameterBank bank;
  Rng rng(4);
  bank.Add("p", RandomMatrix(3, 3, rng));
  const Tensor before = bank.at("p").value;
  for (int i = 0; i < 5; ++i) AdamStep(bank, 1e-3);
  CHECK(bank.at("p").value == before);
  CHECK(bank.at("p").step == 5);
}

TEST_CASE("adam first step moves each coordinate by about lr against the gradient") {
  ParameterBank bank;
  bank.Add("p", Tensor({3}, std::vector<double>{1.0, 1.0, 1.0}));
  bank.at("p").grad = Tensor({3}, std::vector<double>{2.0, -0.5, 1e-3});
  AdamStep(bank, 0.1);
  const Tensor& v = bank.at("p").value;
  CHECK(v[0] == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(v[1] == doctest::Approx(1.1).epsilon(1e-6));
  CHECK(v[2] == doctest::Approx(0.9).epsilon(1e-4));
}

TEST_CASE("adam only touches the selected prefixes") {
  ParameterBank bank;
  bank.Add("a/w", Tensor({1}, std::vector<double>{1.0}));
  bank.Add("b/w", Tensor({1}, std::vector<double>{1.0}));
  bank.at("a/w").grad[0] = 1.0;
  bank.at("b/w").grad[0] = 1.0;
  AdamStep(bank, 0.1, {"a/"});
  CHECK(bank.at("a/w").value[0] != 1.0);
  CHECK(bank.at("b/w").value[0] == 1.0);
  CHECK(bank.at("b/w").step == 0);
}

TEST_CASE("parameter checkpoints round-trip exactly") {
  ParameterBank bank;
  Rng rng(5);
  bank.Add("x/w", RandomMatrix(3, 4, rng, 1e-7));
  bank.Add("x/b", Tensor({4}, std::vector<double>{0.1, -1e300, 5e-324, 1.0 / 3.0}));
  bank.at("x/w").grad = RandomMatrix(3, 4, rng);
  AdamStep(bank, 1e-3);
  const ParameterBank back = ParseParams(FormatParams(bank));
  for (const auto& name : bank.Names()) {
    CHECK(back.at(name).value == bank.at(name).value);
    CHECK(back.at(name).m == bank.at(name).m);
    CHECK(back.at(name).v == bank.at(name).v);
    CHECK(back.at(name).step == bank.at(name).step);
  }
  CHECK_THROWS(ParseParams("not a checkpoint\n"));
  CHECK_THROWS(ParseParams("#oruda-params v1\nvalue x 2x2 1 2 3\n"));
}

TEST_CASE("network specs are validated") {
  CHECK_THROWS(Network("n", {{LayerSpec::Dense(3, 4), LayerSpec::Dense(5, 1)}}));
  CHECK_THROWS(Network("n", {{LayerSpec::Relu()}}));
  CHECK_THROWS(Network("n", {{LayerSpec::Dense(3, 4), LayerSpec::Dropout(1.0)}}));
  ParameterBank bank;
  bank.Add("dup", Tensor::Vector(1));
  CHECK_THROWS(bank.Add("dup", Tensor::Vector(1)));
}

}  // TEST_SUITE

}  // namespace
}  // namespace oruda
