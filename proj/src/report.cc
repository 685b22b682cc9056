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

#include "oruda/report.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace oruda {

namespace {

class Lines {
 public:
  void Add(const std::string& key, const std::string& value) {
    out_ << key << '=' << value << '\n';
  }
  void Add(const std::string& key, double value) { Add(key, FormatDouble(value)); }
  void Add(const std::string& key, std::size_t value) { Add(key, std::to_string(value)); }
  void Add(const std::string& key, bool value) { Add(key, std::string(value ? "true" : "false")); }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string Join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

nlohmann::ordered_json HistoryJson(const EpochRecord& h) {
  return {{"epoch", h.epoch},
          {"alpha", h.alpha},
          {"loss_or", h.loss_or},
          {"loss_ord", h.loss_ord},
          {"loss_dom", h.loss_dom},
          {"loss_total", h.loss_total},
          {"mean_target_weight", h.mean_target_weight},
          {"private_fraction", h.private_fraction},
          {"private_source_classes", h.private_source_classes},
          {"bias_violations", h.bias_violations},
          {"weight_histogram", h.weight_histogram}};
}

}  // namespace

std::string FormatReportText(const MetricsReport& r) {
  Lines l;
  std::string out = "#oruda-report v" + std::to_string(r.version) + "\n";
  l.Add("variant", r.variant);
  l.Add("seed", std::to_string(r.seed));
  l.Add("scenario.source", ToString(r.scenario.source));
  l.Add("scenario.target", ToString(r.scenario.target));
  l.Add("scenario.common", ToString(r.scenario.common));
  l.Add("scenario.config", ToString(r.scenario.config));
  l.Add("scenario.xi", r.scenario.xi);
  l.Add("uses_hidden_target_labels", r.uses_hidden_target_labels);
  if (r.mae_common) {
    l.Add("mae_common", r.mae_common->mae);
    l.Add("mse_common", r.mae_common->mse);
    l.Add("common_count", r.mae_common->count);
    l.Add("excluded_count", r.mae_common->excluded);
  }
  if (r.mae_true_common) l.Add("mae_true_common", *r.mae_true_common);
  if (r.e_mae) l.Add("e_mae", *r.e_mae);
  if (r.detection) {
    const DetectionMetrics& d = *r.detection;
    l.Add("detection.precision", d.precision);
    l.Add("detection.recall", d.recall);
    l.Add("detection.specificity", d.specificity);
    l.Add("detection.balanced_accuracy", d.balanced_accuracy);
    l.Add("detection.segment_accuracy", d.segment_accuracy);
    l.Add("detection.counts", "tp:" + std::to_string(d.tp) + ",fp:" + std::to_string(d.fp) +
                                  ",tn:" + std::to_string(d.tn) + ",fn:" + std::to_string(d.fn));
  }
  if (r.source_class_accuracy) l.Add("source_class_accuracy", *r.source_class_accuracy);
  if (r.kendall_tau_private) l.Add("kendall_tau_private", *r.kendall_tau_private);
  l.Add("bias_violations", r.bias_violations);
  for (const auto& [y, w] : r.source_class_weights) {
    l.Add("source_class_weight." + std::to_string(y), w);
  }
  if (!r.target_weight_histogram.empty()) {
    l.Add("target_weight_histogram", Join(r.target_weight_histogram));
  }
  for (const auto& h : r.history) {
    const std::string p = "history." + std::to_string(h.epoch) + ".";
    l.Add(p + "alpha", h.alpha);
    l.Add(p + "loss_or", h.loss_or);
    l.Add(p + "loss_ord", h.loss_ord);
    l.Add(p + "loss_dom", h.loss_dom);
    l.Add(p + "loss_total", h.loss_total);
    l.Add(p + "mean_target_weight", h.mean_target_weight);
    l.Add(p + "private_fraction", h.private_fraction);
    l.Add(p + "private_source_classes", h.private_source_classes);
    l.Add(p + "bias_violations", h.bias_violations);
  }
  for (const auto& [k, v] : r.config.entries()) l.Add("config." + k, v);
  return out + l.str();
}

std::string FormatReportJson(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["format"] = "oruda-report";
  j["version"] = r.version;
  j["variant"] = r.variant;
  j["seed"] = r.seed;
  j["scenario"] = {{"source", ToString(r.scenario.source)},
                   {"target", ToString(r.scenario.target)},
                   {"common", ToString(r.scenario.common)},
                   {"config", ToString(r.scenario.config)},
                   {"xi", r.scenario.xi}};
  j["uses_hidden_target_labels"] = r.uses_hidden_target_labels;
  nlohmann::ordered_json m;
  if (r.mae_common) {
    m["mae_common"] = r.mae_common->mae;
    m["mse_common"] = r.mae_common->mse;
    m["common_count"] = r.mae_common->count;
    m["excluded_count"] = r.mae_common->excluded;
  }
  if (r.mae_true_common) m["mae_true_common"] = *r.mae_true_common;
  if (r.e_mae) m["e_mae"] = *r.e_mae;
  if (r.detection) {
    const DetectionMetrics& d = *r.detection;
    m["detection"] = {{"precision", d.precision}, {"recall", d.recall},
                      {"specificity", d.specificity},
                      {"balanced_accuracy", d.balanced_accuracy},
                      {"segment_accuracy", d.segment_accuracy},
                      {"tp", d.tp}, {"fp", d.fp}, {"tn", d.tn}, {"fn", d.fn}};
  }
  if (r.source_class_accuracy) m["source_class_accuracy"] = *r.source_class_accuracy;
  if (r.kendall_tau_private) m["kendall_tau_private"] = *r.kendall_tau_private;
  m["bias_violations"] = r.bias_violations;
  j["metrics"] = m;
  nlohmann::ordered_json weights = nlohmann::ordered_json::object();
  for (const auto& [y, w] : r.source_class_weights) weights[std::to_string(y)] = w;
  j["source_class_weights"] = weights;
  j["target_weight_histogram"] = r.target_weight_histogram;
  nlohmann::ordered_json hist = nlohmann::ordered_json::array();
  for (const auto& h : r.history) hist.push_back(HistoryJson(h));
  j["history"] = hist;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config.entries()) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json inst = nlohmann::ordered_json::array();
  for (const auto& i : r.instances) {
    nlohmann::ordered_json e = {{"id", i.id},
                                {"label", i.label},
                                {"regressor_prediction", i.regressor_prediction},
                                {"prediction", i.prediction},
                                {"is_private", i.is_private},
                                {"segment", ToString(i.segment)},
                                {"precedence", i.precedence},
                                {"weight", i.weight}};
    if (i.rank_score) e["rank_score"] = *i.rank_score;
    inst.push_back(e);
  }
  j["instances"] = inst;
  return j.dump(1) + "\n";
}

std::string FormatInstanceTable(const MetricsReport& r) {
  std::ostringstream out;
  out << "id\tlabel\tregressor_prediction\tprediction\tis_private\tsegment\tprecedence\tweight"
         "\trank_score\n";
  for (const auto& i : r.instances) {
    out << i.id << '\t' << i.label << '\t' << i.regressor_prediction << '\t' << i.prediction
        << '\t' << (i.is_private ? 1 : 0) << '\t' << ToString(i.segment) << '\t'
        << FormatDouble(i.precedence) << '\t' << FormatDouble(i.weight) << '\t'
        << (i.rank_score ? FormatDouble(*i.rank_score) : "-") << '\n';
  }
  return out.str();
}

std::string FormatSummary(const std::vector<SummaryRow>& rows) {
  std::string out = "#oruda-summary v" + std::to_string(kReportVersion) + "\n";
  for (const auto& row : rows) {
    out += row.name + ".runs=" + std::to_string(row.runs) + "\n";
    for (const auto& [k, v] : row.means) out += row.name + "." + k + "=" + FormatDouble(v) + "\n";
  }
  return out;
}

void WriteText(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void WriteReport(const MetricsReport& report, const std::string& dir,
                 const std::string& stem) {
  const std::filesystem::path base = std::filesystem::path(dir) / stem;
  WriteText(base.string() + ".txt", FormatReportText(report));
  WriteText(base.string() + ".json", FormatReportJson(report));
}

}  // namespace oruda
