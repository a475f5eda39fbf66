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

#include "pipeline/pipeline.hpp"

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "common/error.hpp"
#include "pipeline/config.hpp"
#include "pipeline/manifest.hpp"
#include "synth/generator.hpp"
#include "test_util.hpp"

namespace debatenet::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// A small synthetic corpus with a short layout, shared by the suite.
class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = new fs::path(testing::ScratchDir("pipeline"));
    WriteSyntheticCorpus(*root_ / "corpus", synth::ParamsToJson(testing::SmallPreset(1)),
                         std::nullopt);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*root_);
    delete root_;
  }

  // Writes a config next to the corpus with its own workspace.
  static fs::path Config(const std::string& workspace,
                         const ordered_json& overrides = ordered_json::object()) {
    const fs::path dir = *root_ / "corpus";
    ordered_json config = ordered_json::parse(testing::Slurp(dir / "config.json"));
    config["workspace"] = (*root_ / workspace).string();
    config["layout"] = {{"iterations", 250}};
    for (const auto& [key, value] : overrides.items()) config[key] = value;
    const fs::path path = dir / (workspace + ".json");
    std::ofstream(path) << config.dump(2);
    return path;
  }

  static std::map<std::string, std::string> Artifacts(const fs::path& workspace) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(workspace)) {
      if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
      files[fs::relative(entry.path(), workspace).string()] = testing::Slurp(entry.path());
    }
    return files;
  }

  static fs::path* root_;
};

fs::path* PipelineTest::root_ = nullptr;

ErrorCode CodeOf(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

TEST_F(PipelineTest, ConfigProblemsAreListedByField) {
  const fs::path dir = *root_ / "corpus";
  try {
    ParseConfig(R"({"seeds": 3, "layout": {"iterations": "many", "spin": 1},
                    "assort": {"walk": "sideways"}, "colour": "red",
                    "filter": "filter.json"})",
                dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    const std::string message = e.what();
    for (const char* field : {"archive", "seeds", "layout.iterations", "layout.spin",
                              "assort.walk", "colour"}) {
      EXPECT_NE(message.find(field), std::string::npos) << field << "\n" << message;
    }
  }
  PipelineConfig config = LoadConfig(Config("validate"));
  config.ppr.damping = 1.5;
  EXPECT_EQ(CodeOf([&] { ValidateConfig(config); }), ErrorCode::kInvalidArgument);
  config = LoadConfig(Config("validate"));
  config.archive = dir / "missing.jsonl";
  EXPECT_EQ(CodeOf([&] { ValidateConfig(config); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { LoadConfig(dir / "nope.json"); }), ErrorCode::kInvalidArgument);
}

TEST_F(PipelineTest, MissingUpstreamNamesTheStageToRun) {
  Pipeline p(LoadConfig(Config("empty")));
  try {
    p.Run(Stage::kAssort);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDependency);
    EXPECT_NE(std::string(e.what()).find("debatenet classify"), std::string::npos)
        << e.what();
  }
}

TEST_F(PipelineTest, RunsSkipsAndDetectsStaleInputs) {
  const fs::path config_path = Config("main");
  Pipeline p(LoadConfig(config_path));
  for (const StageOutcome& outcome : p.RunAll()) {
    EXPECT_FALSE(outcome.skipped) << StageName(outcome.stage);
    EXPECT_FALSE(outcome.artifacts.empty());
    EXPECT_TRUE(fs::exists(outcome.directory / "manifest.json"));
  }
  for (const StageOutcome& outcome : p.RunAll()) {
    EXPECT_TRUE(outcome.skipped) << StageName(outcome.stage);
  }
  const ordered_json report =
      ordered_json::parse(testing::Slurp(p.StageDir(Stage::kReport) / "report.json"));
  EXPECT_TRUE(report.is_object());

  // A changed assortativity parameter only touches assort and report.
  Pipeline changed(LoadConfig(Config("main", {{"assort", {{"damping", 0.7}}}})));
  EXPECT_FALSE(changed.Staleness(Stage::kClassify).has_value());
  EXPECT_TRUE(changed.Staleness(Stage::kAssort).has_value());
  EXPECT_EQ(CodeOf([&] { changed.Run(Stage::kReport); }), ErrorCode::kStale);

  // An edited input makes ingest stale and blocks its dependants.
  const fs::path seeds = *root_ / "corpus" / "seeds.tsv";
  const std::string original = testing::Slurp(seeds);
  std::ofstream(seeds, std::ios::app) << "424242\n";
  EXPECT_TRUE(p.Staleness(Stage::kIngest).has_value());
  EXPECT_EQ(CodeOf([&] { p.Run(Stage::kForest); }), ErrorCode::kStale);
  RunOptions force;
  force.force = true;
  EXPECT_FALSE(p.Run(Stage::kForest, force).skipped);
  std::ofstream(seeds, std::ios::trunc) << original;
  EXPECT_FALSE(p.Staleness(Stage::kIngest).has_value());
}

TEST_F(PipelineTest, ForcedRerunsAreByteIdentical) {
  Pipeline first(LoadConfig(Config("det_a")));
  first.RunAll();
  const auto before = Artifacts(*root_ / "det_a");
  RunOptions force;
  force.force = true;
  first.RunAll(force);
  EXPECT_EQ(Artifacts(*root_ / "det_a"), before);

  PipelineConfig other = LoadConfig(Config("det_b"));
  other.threads = 4;
  Pipeline second(other);
  second.RunAll();
  const auto after = Artifacts(*root_ / "det_b");
  ASSERT_EQ(after.size(), before.size());
  for (const auto& [name, content] : before) {
    EXPECT_EQ(after.at(name), content) << name;
  }
}

TEST_F(PipelineTest, ManifestRoundTrips) {
  Pipeline p(LoadConfig(Config("manifest")));
  p.Run(Stage::kIngest);
  const std::string text = testing::Slurp(p.StageDir(Stage::kIngest) / "manifest.json");
  const Manifest m = ParseManifest(text);
  EXPECT_EQ(m.stage, "ingest");
  EXPECT_EQ(m.tool_version, kToolVersion);
  EXPECT_FALSE(m.inputs.empty());
  EXPECT_EQ(m.outputs.count("event.jsonl"), 1u);
  EXPECT_EQ(ManifestToJson(m), text);
  EXPECT_EQ(CodeOf([] { ParseManifest("{]"); }), ErrorCode::kParse);
}

TEST(Stages, NamesAndOrder) {
  for (Stage stage : kStageOrder) EXPECT_EQ(ParseStage(StageName(stage)), stage);
  EXPECT_FALSE(ParseStage("everything").has_value());
  EXPECT_TRUE(Upstream(Stage::kIngest).empty());
  for (Stage stage : kStageOrder) {
    for (Stage up : Upstream(stage)) EXPECT_LT(static_cast<int>(up), static_cast<int>(stage));
  }
}

}  // namespace
}  // namespace debatenet::pipeline
