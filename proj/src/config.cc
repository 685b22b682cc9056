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

#include "oruda/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

namespace oruda {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(const std::string& text) {
  KeyValueConfig kv;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(number) + ": empty key");
    }
    kv.Set(key, Trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValueConfig KeyValueConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

void KeyValueConfig::Set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

std::optional<std::string> KeyValueConfig::Get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::Format() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

std::string ToString(Variant v) {
  switch (v) {
    case Variant::kOruda: return "oruda";
    case Variant::kNoAdaptation: return "no_adaptation";
    case Variant::kOracleOrder: return "oracle_order";
    case Variant::kSupervisedTarget: return "supervised_target";
  }
  return "?";
}

Variant ParseVariant(const std::string& s) {
  for (Variant v : {Variant::kOruda, Variant::kNoAdaptation, Variant::kOracleOrder,
                    Variant::kSupervisedTarget}) {
    if (ToString(v) == s) return v;
  }
  throw ConfigError("unknown variant '" + s + "'");
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

template <typename T>
T ParseNumber(const std::string& key, const std::string& s) {
  T v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ConfigError("bad value for " + key + ": '" + s + "'");
  }
  return v;
}

bool ParseBool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "on") return true;
  if (s == "false" || s == "0" || s == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + s + "'");
}

ClassRange ParseRange(const std::string& key, const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError(key + ": expected lo:hi");
  const int lo = ParseNumber<int>(key, s.substr(0, colon));
  const int hi = ParseNumber<int>(key, s.substr(colon + 1));
  if (lo > hi) throw ConfigError(key + ": lo > hi");
  return {lo, hi};
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

// Projections are generic lambdas returning a reference to the member, so
// they serve both the mutable setter and the const getter.
template <typename Proj>
Field Num(Proj proj) {
  using T = std::remove_cvref_t<decltype(proj(std::declval<ExperimentConfig&>()))>;
  return {[proj](ExperimentConfig& c, const std::string& k, const std::string& v) {
            proj(c) = ParseNumber<T>(k, v);
          },
          [proj](const ExperimentConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return FormatDouble(proj(c));
            } else {
              return std::to_string(proj(c));
            }
          }};
}

template <typename Proj>
Field Bool(Proj proj) {
  return {[proj](ExperimentConfig& c, const std::string& k, const std::string& v) {
            proj(c) = ParseBool(k, v);
          },
          [proj](const ExperimentConfig& c) {
            return std::string(proj(c) ? "true" : "false");
          }};
}

template <typename Proj>
Field Range(Proj proj) {
  return {[proj](ExperimentConfig& c, const std::string& k, const std::string& v) {
            proj(c) = ParseRange(k, v);
          },
          [proj](const ExperimentConfig& c) {
            const ClassRange r = proj(c);
            return std::to_string(r.lo) + ":" + std::to_string(r.hi);
          }};
}

const std::map<std::string, Field>& Fields() {
  static const std::map<std::string, Field> fields = [] {
    std::map<std::string, Field> f;
    using C = ExperimentConfig;
    f["scenario.source"] = Range([](auto& c) -> auto& { return c.source_range; });
    f["scenario.target"] = Range([](auto& c) -> auto& { return c.target_range; });

    f["data.feature_dim"] = Num([](auto& c) -> auto& { return c.synthetic.feature_dim; });
    f["data.noise_sigma"] = Num([](auto& c) -> auto& { return c.synthetic.noise_sigma; });
    f["data.samples_per_class"] =
        Num([](auto& c) -> auto& { return c.synthetic.samples_per_class; });
    f["data.source_count"] = Num([](auto& c) -> auto& { return c.synthetic.source_count; });
    f["data.target_count"] = Num([](auto& c) -> auto& { return c.synthetic.target_count; });
    f["data.domain_shift_seed"] =
        Num([](auto& c) -> auto& { return c.synthetic.domain_shift_seed; });
    f["data.curve_seed"] = Num([](auto& c) -> auto& { return c.synthetic.curve_seed; });
    f["data.noise_seed"] = Num([](auto& c) -> auto& { return c.synthetic.noise_seed; });
    f["data.rotation_scale"] = Num([](auto& c) -> auto& { return c.synthetic.rotation_scale; });
    f["data.translation_scale"] =
        Num([](auto& c) -> auto& { return c.synthetic.translation_scale; });
    f["data.max_condition"] = Num([](auto& c) -> auto& { return c.synthetic.max_condition; });
    f["data.identical_maps"] = Bool([](auto& c) -> auto& { return c.synthetic.identical_maps; });
    f["data.harmonics"] = Num([](auto& c) -> auto& { return c.synthetic.harmonics; });
    f["data.harmonic_amplitude"] =
        Num([](auto& c) -> auto& { return c.synthetic.harmonic_amplitude; });
    f["data.trend_scale"] = Num([](auto& c) -> auto& { return c.synthetic.trend_scale; });
    f["data.train_ratio"] = Num([](auto& c) -> auto& { return c.train_ratio; });
    f["data.table"] = {[](C& c, const std::string&, const std::string& v) { c.feature_table = v; },
                       [](const C& c) { return c.feature_table; }};

    f["train.gamma"] = Num([](auto& c) -> auto& { return c.train.gamma; });
    f["train.epochs"] = Num([](auto& c) -> auto& { return c.train.epochs; });
    f["train.batch_size"] = Num([](auto& c) -> auto& { return c.train.batch_size; });
    f["train.lr"] = Num([](auto& c) -> auto& { return c.train.lr; });
    f["train.seed"] = Num([](auto& c) -> auto& { return c.train.seed; });
    f["train.tau"] = Num([](auto& c) -> auto& { return c.train.order.tau; });
    f["train.filter_width"] = Num([](auto& c) -> auto& { return c.train.filter.width; });
    f["train.filter_order"] = Num([](auto& c) -> auto& { return c.train.filter.order; });
    f["train.curriculum_floor"] = Num([](auto& c) -> auto& { return c.train.curriculum.floor; });
    f["train.curriculum_time_constant"] =
        Num([](auto& c) -> auto& { return c.train.curriculum.time_constant; });
    f["train.use_coral_loss"] =
        Bool([](auto& c) -> auto& { return c.train.ablations.use_coral_loss; });
    f["train.use_smooth_filter"] =
        Bool([](auto& c) -> auto& { return c.train.ablations.use_smooth_filter; });
    f["train.use_curriculum"] =
        Bool([](auto& c) -> auto& { return c.train.ablations.use_curriculum; });
    f["train.use_adaptation"] =
        Bool([](auto& c) -> auto& { return c.train.ablations.use_adaptation; });
    f["train.pairs_per_batch"] = Num([](auto& c) -> auto& { return c.train.pairs_per_batch; });
    f["train.refresh_source_sample"] =
        Num([](auto& c) -> auto& { return c.train.refresh_source_sample; });
    f["train.refresh_target_sample"] =
        Num([](auto& c) -> auto& { return c.train.refresh_target_sample; });
    f["train.refresh_class_sample"] =
        Num([](auto& c) -> auto& { return c.train.refresh_class_sample; });
    f["train.head"] = {[](C& c, const std::string& k, const std::string& v) {
                         try {
                           c.train.coral_head = ParseHeadKind(v);
                         } catch (const std::exception&) {
                           throw ConfigError("bad value for " + k + ": '" + v + "'");
                         }
                       },
                       [](const C& c) { return ToString(c.train.coral_head); }};

    f["model.feature_hidden"] = Num([](auto& c) -> auto& { return c.train.shape.feature_hidden; });
    f["model.feature_dim"] = Num([](auto& c) -> auto& { return c.train.shape.feature_dim; });
    f["model.head_hidden"] = Num([](auto& c) -> auto& { return c.train.shape.head_hidden; });
    f["model.disc_hidden"] = Num([](auto& c) -> auto& { return c.train.shape.disc_hidden; });
    f["model.disc_dropout"] = Num([](auto& c) -> auto& { return c.train.shape.disc_dropout; });

    f["eval.source_sample"] = Num([](auto& c) -> auto& { return c.eval_source_sample; });
    f["eval.target_sample"] = Num([](auto& c) -> auto& { return c.eval_target_sample; });
    f["eval.rank_degree"] = Num([](auto& c) -> auto& { return c.rank_degree; });

    f["experiment.variants"] = {
        [](C& c, const std::string&, const std::string& v) {
          c.variants.clear();
          std::istringstream in(v);
          std::string item;
          while (std::getline(in, item, ',')) {
            item = Trim(item);
            if (!item.empty()) c.variants.push_back(ParseVariant(item));
          }
        },
        [](const C& c) {
          std::string s;
          for (std::size_t i = 0; i < c.variants.size(); ++i) {
            if (i) s += ",";
            s += ToString(c.variants[i]);
          }
          return s;
        }};
    f["experiment.repeats"] = Num([](auto& c) -> auto& { return c.repeats; });
    f["experiment.output_dir"] = {
        [](C& c, const std::string&, const std::string& v) { c.output_dir = v; },
        [](const C& c) { return c.output_dir; }};
    f["experiment.report_version"] = Num([](auto& c) -> auto& { return c.report_version; });
    return f;
  }();
  return fields;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (source_range.lo > source_range.hi || target_range.lo > target_range.hi) {
    throw ConfigError("class range with lo > hi");
  }
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw ConfigError("data.train_ratio must be in (0, 1)");
  }
  if (repeats < 1) throw ConfigError("experiment.repeats must be >= 1");
  if (variants.empty()) throw ConfigError("experiment.variants is empty");
  if (report_version != kReportVersion) {
    throw ConfigError("unsupported report version " + std::to_string(report_version));
  }
  if (rank_degree < 1 || eval_source_sample < 1 || eval_target_sample < 1) {
    throw ConfigError("evaluation sample sizes must be >= 1");
  }
  try {
    DeriveScenario(source_range, target_range);
    train.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig FromKeyValues(const KeyValueConfig& kv) {
  ExperimentConfig cfg;
  const auto& fields = Fields();
  for (const auto& [key, value] : kv.entries()) {
    auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second.set(cfg, key, value);
  }
  return cfg;
}

KeyValueConfig ToKeyValues(const ExperimentConfig& cfg) {
  KeyValueConfig kv;
  for (const auto& [key, field] : Fields()) kv.Set(key, field.get(cfg));
  return kv;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, field] : Fields()) keys.push_back(key);
  return keys;
}

}  // namespace oruda
