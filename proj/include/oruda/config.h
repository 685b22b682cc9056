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

#ifndef ORUDA_CONFIG_H_
#define ORUDA_CONFIG_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oruda/labelspace.h"
#include "oruda/synthetic.h"
#include "oruda/trainer.h"

namespace oruda {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat dotted-key configuration: one `key = value` per line, `#` starts a
// comment, later keys override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(const std::string& text);
  static KeyValueConfig Load(const std::string& path);

  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const { return entries_.count(key) > 0; }
  std::optional<std::string> Get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }
  // Sorted `key=value` lines.
  std::string Format() const;

 private:
  std::map<std::string, std::string> entries_;
};

enum class Variant { kOruda, kNoAdaptation, kOracleOrder, kSupervisedTarget };
std::string ToString(Variant v);
Variant ParseVariant(const std::string& s);

inline constexpr int kReportVersion = 1;

struct ExperimentConfig {
  ClassRange source_range{15, 40};
  ClassRange target_range{1, 30};
  SyntheticSpec synthetic;
  std::string feature_table;  // when set, loaded instead of generated
  double train_ratio = 0.8;
  TrainConfig train;
  std::size_t eval_source_sample = 100;  // l_s at test time
  std::size_t eval_target_sample = 100;  // targets per source class at test time
  std::size_t rank_degree = 100;         // l_t
  std::vector<Variant> variants{Variant::kOruda};
  int repeats = 1;
  std::string output_dir;
  int report_version = kReportVersion;

  // Throws ConfigError on inconsistent settings.
  void Validate() const;
};

// Every key has a default; unknown keys and malformed values raise
// ConfigError naming the key.
ExperimentConfig FromKeyValues(const KeyValueConfig& kv);
KeyValueConfig ToKeyValues(const ExperimentConfig& cfg);
// Names of all recognised keys, sorted.
std::vector<std::string> ConfigKeys();

// Shortest round-trip decimal.
std::string FormatDouble(double v);

}  // namespace oruda

#endif  // ORUDA_CONFIG_H_
