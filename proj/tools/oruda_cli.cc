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

// Command-line front end: data generation, training, evaluation, ranking,
// experiment reports and the ablation grid.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oruda/config.h"
#include "oruda/dataset.h"
#include "oruda/experiment.h"
#include "oruda/log.h"
#include "oruda/report.h"
#include "oruda/trainer.h"

namespace {

using namespace oruda;

struct CommonOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::string log_level = "info";
};

// Registers --config, --log-level and one flag per config key.
void AddConfigFlags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "flat key=value config file");
  cmd->add_option("--log-level", opts.log_level, "debug|info|warning|error|off");
  for (const std::string& key : ConfigKeys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
        "override " + key);
  }
}

void ApplyLogLevel(const std::string& s) {
  try {
    SetLogLevel(ParseLogLevel(s));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig Resolve(const CommonOptions& opts) {
  ApplyLogLevel(opts.log_level);
  KeyValueConfig kv;
  if (!opts.config_path.empty()) kv = KeyValueConfig::Load(opts.config_path);
  for (const auto& [k, v] : opts.overrides) kv.Set(k, v);
  ExperimentConfig cfg = FromKeyValues(kv);
  cfg.Validate();
  return cfg;
}

Dataset Combine(const std::pair<Dataset, Dataset>& data) {
  const Dataset& s = data.first;
  Dataset all(s.dim(), s.source_range(), s.target_range());
  for (std::size_t i = 0; i < s.size(); ++i) all.Add(s.at(i));
  for (std::size_t i = 0; i < data.second.size(); ++i) all.Add(data.second.at(i));
  return all;
}

std::string OutputDir(const ExperimentConfig& cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  return cfg.output_dir.empty() ? "oruda_out" : cfg.output_dir;
}

TrainedRun LoadRun(const ExperimentConfig& cfg, Variant variant, const PreparedData& data,
                   const std::string& checkpoint) {
  TrainState state = LoadCheckpoint(checkpoint);
  return ResumeVariant(cfg, variant, cfg.train.seed, data, std::move(state));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal domain adaptation for ordinal regression"};
  app.require_subcommand(1);

  CommonOptions gen_opts, train_opts, eval_opts, rank_opts, report_opts, ablate_opts, embed_opts;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-data", "write a synthetic two-domain feature table");
  AddConfigFlags(gen, gen_opts);
  gen->add_option("--out", gen_out, "output feature table")->required();

  std::string train_out, train_resume, train_variant = "oruda";
  auto* train = app.add_subcommand("train", "train one variant and write a checkpoint");
  AddConfigFlags(train, train_opts);
  train->add_option("--out", train_out, "checkpoint path")->required();
  train->add_option("--resume", train_resume, "continue from this checkpoint");
  train->add_option("--variant", train_variant, "oruda|no_adaptation|oracle_order|supervised_target");

  std::string eval_ckpt, eval_dir, eval_variant = "oruda";
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint and write a report");
  AddConfigFlags(eval, eval_opts);
  eval->add_option("--checkpoint", eval_ckpt, "checkpoint path")->required();
  eval->add_option("--variant", eval_variant, "variant the checkpoint was trained as");
  eval->add_option("--out-dir", eval_dir, "report directory");

  std::string rank_ckpt, rank_out, rank_variant = "oruda";
  auto* rank = app.add_subcommand("rank", "per-instance verdicts, ranking scores and classes");
  AddConfigFlags(rank, rank_opts);
  rank->add_option("--checkpoint", rank_ckpt, "checkpoint path")->required();
  rank->add_option("--variant", rank_variant, "variant the checkpoint was trained as");
  rank->add_option("--out", rank_out, "output table (default stdout)");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "run the configured variants and repeats");
  AddConfigFlags(report, report_opts);
  report->add_option("--out-dir", report_dir, "report directory");

  std::string ablate_dir;
  std::vector<std::uint64_t> ablate_seeds{0, 1, 2};
  bool ablate_full = false;
  auto* ablate = app.add_subcommand("ablate", "run the Coral / SF / CL ablation grid");
  AddConfigFlags(ablate, ablate_opts);
  ablate->add_option("--out-dir", ablate_dir, "report directory");
  ablate->add_option("--seeds", ablate_seeds, "seeds")->delimiter(',');
  ablate->add_flag("--full", ablate_full, "all eight flag combinations");

  std::string embed_ckpt, embed_out, embed_variant = "oruda";
  auto* embed = app.add_subcommand("export-embeddings", "write F(x) for every instance");
  AddConfigFlags(embed, embed_opts);
  embed->add_option("--checkpoint", embed_ckpt, "checkpoint path")->required();
  embed->add_option("--variant", embed_variant, "variant the checkpoint was trained as");
  embed->add_option("--out", embed_out, "output table")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const ExperimentConfig cfg = Resolve(gen_opts);
      WriteFeatureTable(Combine(LoadOrGenerate(cfg)), gen_out);
    } else if (train->parsed()) {
      const ExperimentConfig cfg = Resolve(train_opts);
      const Variant v = ParseVariant(train_variant);
      const PreparedData data = SplitData(cfg, LoadOrGenerate(cfg), cfg.train.seed);
      TrainedRun run = train_resume.empty()
                           ? TrainVariant(cfg, v, cfg.train.seed, data)
                           : ResumeVariant(cfg, v, cfg.train.seed, data,
                                           LoadCheckpoint(train_resume));
      SaveCheckpoint(run.state, train_out);
      std::cout << FormatHistory(run.state.history);
    } else if (eval->parsed()) {
      const ExperimentConfig cfg = Resolve(eval_opts);
      const Variant v = ParseVariant(eval_variant);
      const PreparedData data = SplitData(cfg, LoadOrGenerate(cfg), cfg.train.seed);
      const MetricsReport r = EvaluateRun(cfg, LoadRun(cfg, v, data, eval_ckpt), data);
      WriteReport(r, OutputDir(cfg, eval_dir), ToString(v) + "_seed" + std::to_string(r.seed));
      std::cout << FormatReportText(r);
    } else if (rank->parsed()) {
      const ExperimentConfig cfg = Resolve(rank_opts);
      const Variant v = ParseVariant(rank_variant);
      const PreparedData data = SplitData(cfg, LoadOrGenerate(cfg), cfg.train.seed);
      const MetricsReport r = EvaluateRun(cfg, LoadRun(cfg, v, data, rank_ckpt), data);
      if (rank_out.empty()) {
        std::cout << FormatInstanceTable(r);
      } else {
        WriteText(rank_out, FormatInstanceTable(r));
      }
    } else if (report->parsed()) {
      const ExperimentConfig cfg = Resolve(report_opts);
      const ExperimentResult res = RunExperiment(cfg);
      const std::string dir = OutputDir(cfg, report_dir);
      for (const auto& r : res.runs) {
        WriteReport(r, dir, r.variant + "_seed" + std::to_string(r.seed));
      }
      WriteText((std::filesystem::path(dir) / "summary.txt").string(), FormatSummary(res.summary));
      std::cout << FormatSummary(res.summary);
    } else if (ablate->parsed()) {
      const ExperimentConfig cfg = Resolve(ablate_opts);
      const AblationResult res = RunAblation(cfg, AblationGrid(ablate_full), ablate_seeds);
      const std::string dir = OutputDir(cfg, ablate_dir);
      std::vector<SummaryRow> rows;
      for (std::size_t c = 0; c < res.cells.size(); ++c) {
        for (const auto& r : res.reports[c]) {
          WriteReport(r, dir, res.cells[c].name + "_seed" + std::to_string(r.seed));
        }
        rows.push_back(Summarize(res.cells[c].name, res.reports[c]));
      }
      WriteText((std::filesystem::path(dir) / "summary.txt").string(), FormatSummary(rows));
      std::cout << FormatSummary(rows);
    } else if (embed->parsed()) {
      const ExperimentConfig cfg = Resolve(embed_opts);
      const Variant v = ParseVariant(embed_variant);
      const auto full = LoadOrGenerate(cfg);
      const PreparedData data = SplitData(cfg, full, cfg.train.seed);
      const TrainedRun run = LoadRun(cfg, v, data, embed_ckpt);
      const OrudaModel model(run.shape);
      std::string text = "id\tdomain\tlabel\tembedding\n";
      for (const Dataset* d : {&full.first, &full.second}) {
        const Tensor e = model.Embed(run.state.bank, d->features());
        for (std::size_t i = 0; i < d->size(); ++i) {
          text += std::to_string(d->id(i)) + "\t" + ToString(d->domain(i)) + "\t" +
                  (d->label(i) ? std::to_string(*d->label(i)) : "-") + "\t";
          for (std::size_t k = 0; k < e.cols(); ++k) {
            if (k) text += ',';
            text += FormatDouble(e.at(i, k));
          }
          text += '\n';
        }
      }
      WriteText(embed_out, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "oruda: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
