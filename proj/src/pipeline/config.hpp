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


#ifndef DEBATENET_PIPELINE_CONFIG_HPP_
#define DEBATENET_PIPELINE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "assort/assortativity.hpp"
#include "ingest/archive.hpp"
#include "ingest/record.hpp"
#include "layout/force_layout.hpp"

namespace debatenet::pipeline {

namespace fs = std::filesystem;

// Name of the environment variable holding the default workspace.
inline constexpr const char* kWorkspaceEnv = "DEBATENET_WORKSPACE";

struct SnowballConfig {
  int rounds = 0;
  double min_weekly_rate = 1.0;
};

struct PipelineConfig {
  fs::path source;  // the config file, empty when built in memory
  fs::path archive;
  fs::path seeds;
  // Background archive for the fallback retweet network; the main archive
  // (all retweets, no window or keyword filter) when unset.
  std::optional<fs::path> fallback_archive;
  std::optional<fs::path> boundaries_event;
  std::optional<fs::path> boundaries_fallback;
  // CSV user_id,label used to place boundaries when no boundary file is
  // given (synthetic runs with a known partition).
  std::optional<fs::path> reference_labels;
  fs::path workspace;
  ingest::CorpusFilter filter;
  bool strict = false;
  ingest::QuoteMapping quotes = ingest::QuoteMapping::kAsRetweet;
  SnowballConfig snowball;
  layout::LayoutParams layout;
  assort::PprOptions ppr;
  size_t bins = 40;
  size_t audit_sample = 100;
  int threads = 1;
  std::uint64_t seed = 1;
};

// Parses a config document. Relative paths resolve against `base_dir`; the
// workspace falls back to $DEBATENET_WORKSPACE, then "<base_dir>/workspace".
// Throws Error(kInvalidArgument) listing every offending field.
PipelineConfig ParseConfig(std::string_view json_text, const fs::path& base_dir);
PipelineConfig LoadConfig(const fs::path& path);

// Checks parameter ranges and that every referenced input exists.
void ValidateConfig(const PipelineConfig& config);

// Canonical dump with absolute paths.
nlohmann::ordered_json ConfigToJson(const PipelineConfig& config);

}  // namespace debatenet::pipeline

#endif  // DEBATENET_PIPELINE_CONFIG_HPP_
