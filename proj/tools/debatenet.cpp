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

// debatenet command-line driver. Each subcommand runs one pipeline stage in
// the configured workspace; `run` chains all of them.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "debatenet/debatenet.h"

namespace {

struct Flags {
  std::string config;
  std::string workspace;
  std::uint64_t seed = 0;
  bool strict = false;
  bool force = false;
  int threads = 0;
};

int Fail(dn_status status) {
  std::fprintf(stderr, "error: %s\n", dn_last_error());
  return dn_exit_code(status);
}

void PrintOutcome(const dn_pipeline* pipeline, const char* stage, bool skipped) {
  if (skipped) {
    std::printf("%s: up to date (%s)\n", stage, dn_pipeline_last_directory(pipeline));
  } else {
    std::printf("%s: wrote %zu artifacts to %s\n", stage,
                dn_pipeline_artifact_count(pipeline),
                dn_pipeline_last_directory(pipeline));
  }
  for (size_t i = 0; i < dn_pipeline_note_count(pipeline); ++i) {
    std::printf("  note: %s\n", dn_pipeline_note(pipeline, i));
  }
}

int RunStages(const Flags& flags, bool seed_given, bool strict_given,
              const std::vector<std::string>& stages) {
  if (flags.config.empty()) {
    std::fprintf(stderr, "error: --config is required\n");
    return 2;
  }
  dn_pipeline_options options;
  dn_pipeline_options_init(&options);
  if (!flags.workspace.empty()) options.workspace = flags.workspace.c_str();
  options.threads = flags.threads;
  options.has_seed = seed_given ? 1 : 0;
  options.seed = flags.seed;
  if (strict_given) options.strict = 1;

  dn_pipeline* pipeline = nullptr;
  dn_status status = dn_pipeline_open(flags.config.c_str(), &options, &pipeline);
  if (status != DN_OK) return Fail(status);
  int exit_code = 0;
  for (const std::string& stage : stages) {
    int skipped = 0;
    status = dn_pipeline_run(pipeline, stage.c_str(), flags.force ? 1 : 0, &skipped);
    if (status != DN_OK) {
      exit_code = Fail(status);
      break;
    }
    PrintOutcome(pipeline, stage.c_str(), skipped != 0);
  }
  dn_pipeline_close(pipeline);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion-cluster engagement analysis of retweet and reply data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dn_version()));

  Flags flags;
  auto* seed_opt = app.add_option("--seed", flags.seed, "Seed for layout and sampling");
  auto* strict_flag = app.add_flag("--strict", flags.strict, "Fail on malformed input records");
  app.add_option("--config", flags.config, "Pipeline config (JSON)");
  app.add_option("--workspace", flags.workspace,
                 "Artifact directory (default: config value, then $DEBATENET_WORKSPACE)");
  app.add_flag("--force", flags.force, "Re-run even when up to date; accept stale inputs");
  app.add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.fallthrough();

  std::vector<std::string> chosen;
  const size_t stages = dn_stage_count();
  for (size_t i = 0; i < stages; ++i) {
    const std::string name = dn_stage_name(i);
    app.add_subcommand(name, "Run the " + name + " stage")
        ->callback([&chosen, name] { chosen = {name}; });
  }
  app.add_subcommand("run", "Run every stage in order")->callback([&] {
    chosen.clear();
    for (size_t i = 0; i < stages; ++i) chosen.emplace_back(dn_stage_name(i));
  });

  std::string synth_out;
  std::string synth_params;
  bool synth_mode = false;
  auto* synth = app.add_subcommand("synth", "Write a synthetic ground-truth corpus");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--params", synth_params, "Generator parameters (JSON)");
  synth->callback([&] { synth_mode = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (synth_mode) {
    std::string params;
    if (!synth_params.empty()) {
      std::ifstream in(synth_params, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "error: cannot read '%s'\n", synth_params.c_str());
        return 2;
      }
      std::ostringstream text;
      text << in.rdbuf();
      params = text.str();
    }
    const dn_status status = dn_synth_write(synth_out.c_str(), params.c_str(),
                                            seed_opt->count() > 0 ? 1 : 0, flags.seed);
    if (status != DN_OK) return Fail(status);
    std::printf("synth: wrote corpus to %s (config: %s/config.json)\n",
                synth_out.c_str(), synth_out.c_str());
    return 0;
  }
  return RunStages(flags, seed_opt->count() > 0, strict_flag->count() > 0, chosen);
}
