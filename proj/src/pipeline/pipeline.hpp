// Copyright 2026 The debatenet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef DEBATENET_PIPELINE_PIPELINE_HPP_
#define DEBATENET_PIPELINE_PIPELINE_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pipeline/config.hpp"
#include "pipeline/manifest.hpp"

namespace debatenet::pipeline {

enum class Stage {
  kIngest,
  kRetweetNet,
  kForest,
  kLayout,
  kClassify,
  kAssort,
  kStats,
  kReport,
};

inline constexpr std::array<Stage, 8> kStageOrder = {
    Stage::kIngest, Stage::kRetweetNet, Stage::kForest, Stage::kLayout,
    Stage::kClassify, Stage::kAssort, Stage::kStats, Stage::kReport};

// Command names: ingest, retweet-net, forest, layout, classify, assort, stats,
// report.
std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);
// Stages whose artifacts `stage` reads directly.
std::vector<Stage> Upstream(Stage stage);

struct RunOptions {
  // Re-run even when up to date, and accept stale upstream artifacts.
  bool force = false;
};

struct StageOutcome {
  Stage stage = Stage::kIngest;
  bool skipped = false;  // artifacts were already up to date
  fs::path directory;
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;
};

// Runs stages inside one workspace; each stage owns "<workspace>/<name>/"
// and records a manifest.json there. Missing upstream artifacts raise
// Error(kDependency) naming the command to run; upstream artifacts that no
// longer match their manifests raise Error(kStale) unless forced.
class Pipeline {
 public:
  // Validates the config.
  explicit Pipeline(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  fs::path StageDir(Stage stage) const;

  StageOutcome Run(Stage stage, const RunOptions& options = {});
  // Every stage from ingest to report, in order.
  std::vector<StageOutcome> RunAll(const RunOptions& options = {});

  // Empty when the stage's manifest matches its current inputs, parameters
  // and outputs; otherwise the reason it would re-run.
  std::optional<std::string> Staleness(Stage stage) const;

 private:
  std::map<std::string, FileDigest> CurrentInputs(Stage stage) const;
  nlohmann::ordered_json Parameters(Stage stage) const;
  std::optional<Manifest> LoadManifest(Stage stage) const;
  void CheckUpstream(Stage stage, bool force) const;

  std::vector<std::string> Execute(Stage stage, std::vector<std::string>& notes);

  PipelineConfig config_;
};

// Writes a synthetic corpus (archive.jsonl, seeds.tsv, truth.csv,
// params.json, filter.json, config.json, manifest.json) into `out_dir`.
// `params_json` empty selects the polarized preset with `seed`;
// otherwise fields missing from it take preset values and `seed` overrides
// its seed when present.
std::vector<std::string> WriteSyntheticCorpus(const fs::path& out_dir,
                                              std::string_view params_json,
                                              std::optional<std::uint64_t> seed);

}  // namespace debatenet::pipeline

#endif  // DEBATENET_PIPELINE_PIPELINE_HPP_
