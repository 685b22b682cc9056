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

#include "oruda/params.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oruda/kernels.h"

namespace oruda {
namespace {

constexpr std::string_view kHeader = "#oruda-params v1";

bool HasPrefix(std::string_view name, const std::vector<std::string>& prefixes) {
  if (prefixes.empty()) return true;
  for (const auto& p : prefixes) {
    if (name.starts_with(p)) return true;
  }
  return false;
}

void AppendTensor(std::string& out, std::string_view kind,
                  const std::string& name, const Tensor& t) {
  out += kind;
  out += ' ';
  out += name;
  out += ' ';
  for (std::size_t i = 0; i < t.shape().size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(t.shape()[i]);
  }
  char buf[32];
  for (double v : t.values()) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out += ' ';
    out.append(buf, end);
  }
  out += '\n';
}

std::vector<std::size_t> ParseShape(const std::string& s, std::size_t line) {
  std::vector<std::size_t> shape;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = std::min(s.find('x', start), s.size());
    std::size_t dim = 0;
    auto [end, ec] = std::from_chars(s.data() + start, s.data() + pos, dim);
    if (ec != std::errc() || end != s.data() + pos) {
      throw std::runtime_error("params line " + std::to_string(line) +
                               ": bad shape '" + s + "'");
    }
    shape.push_back(dim);
    start = pos + 1;
  }
  return shape;
}

}  // namespace

void ParameterBank::Add(const std::string& name, Tensor init) {
  if (params_.contains(name)) {
    throw std::invalid_argument("duplicate parameter " + name);
  }
  Parameter p;
  p.grad = Tensor(init.shape());
  p.m = Tensor(init.shape());
  p.v = Tensor(init.shape());
  p.value = std::move(init);
  params_.emplace(name, std::move(p));
}

bool ParameterBank::Contains(const std::string& name) const {
  return params_.contains(name);
}

Parameter& ParameterBank::at(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw std::out_of_range("no parameter " + name);
  return it->second;
}

const Parameter& ParameterBank::at(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw std::out_of_range("no parameter " + name);
  return it->second;
}

std::vector<std::string> ParameterBank::Names() const {
  std::vector<std::string> names;
  for (const auto& [name, p] : params_) names.push_back(name);
  return names;
}

std::vector<std::string> ParameterBank::NamesWithPrefix(
    std::string_view prefix) const {
  std::vector<std::string> names;
  for (const auto& [name, p] : params_) {
    if (std::string_view(name).starts_with(prefix)) names.push_back(name);
  }
  return names;
}

void ParameterBank::ZeroGrad() {
  for (auto& [name, p] : params_) p.grad.Fill(0.0);
}

void ParameterBank::ZeroGrad(std::string_view prefix) {
  for (auto& [name, p] : params_) {
    if (std::string_view(name).starts_with(prefix)) p.grad.Fill(0.0);
  }
}

std::size_t ParameterBank::ScalarCount() const {
  std::size_t n = 0;
  for (const auto& [name, p] : params_) n += p.value.size();
  return n;
}

void AdamStep(ParameterBank& bank, double lr,
              const std::vector<std::string>& prefixes,
              const AdamOptions& options) {
  for (auto& [name, p] : bank) {
    if (!HasPrefix(name, prefixes)) continue;
    ++p.step;
    kernels::AdamUpdate(p.value.values(), p.grad.values(), p.m.values(),
                        p.v.values(), lr, options.beta1, options.beta2,
                        options.eps, p.step);
  }
}

std::string FormatParams(const ParameterBank& bank) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& [name, p] : bank) {
    AppendTensor(out, "value", name, p.value);
    AppendTensor(out, "m", name, p.m);
    AppendTensor(out, "v", name, p.v);
    out += "step " + name + " " + std::to_string(p.step) + "\n";
  }
  return out;
}

ParameterBank ParseParams(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("params: missing header '" + std::string(kHeader) +
                             "'");
  }
  ParameterBank bank;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string kind, name;
    fields >> kind >> name;
    if (kind == "step") {
      long step = 0;
      if (!(fields >> step)) {
        throw std::runtime_error("params line " + std::to_string(line_no) +
                                 ": bad step");
      }
      bank.at(name).step = step;
      continue;
    }
    std::string shape_str;
    fields >> shape_str;
    const auto shape = ParseShape(shape_str, line_no);
    std::vector<double> values;
    std::string tok;
    while (fields >> tok) {
      double v = 0.0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || end != tok.data() + tok.size()) {
        throw std::runtime_error("params line " + std::to_string(line_no) +
                                 ": bad value '" + tok + "'");
      }
      values.push_back(v);
    }
    Tensor t(shape, std::move(values));
    if (kind == "value") {
      bank.Add(name, std::move(t));
    } else if (kind == "m" || kind == "v") {
      Parameter& p = bank.at(name);
      if (!t.SameShape(p.value)) {
        throw std::runtime_error("params line " + std::to_string(line_no) +
                                 ": moment shape mismatch for " + name);
      }
      (kind == "m" ? p.m : p.v) = std::move(t);
    } else {
      throw std::runtime_error("params line " + std::to_string(line_no) +
                               ": unknown record '" + kind + "'");
    }
  }
  return bank;
}

void SaveParams(const ParameterBank& bank, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << FormatParams(bank);
}

ParameterBank LoadParams(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return ParseParams(buf.str());
}

}  // namespace oruda
