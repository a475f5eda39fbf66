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

#include "synth/generator.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "common/error.hpp"
#include "forest/reply_forest.hpp"
#include "graph/graph_io.hpp"
#include "ingest/filters.hpp"
#include "test_util.hpp"

namespace debatenet::synth {
namespace {

using ingest::RecordKind;

TEST(Generate, ReproducibleForAFixedSeed) {
  const SynthCorpus a = Generate(testing::SmallPreset(7));
  const SynthCorpus b = Generate(testing::SmallPreset(7));
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.seeds, b.seeds);
  EXPECT_EQ(a.group, b.group);
  EXPECT_NE(Generate(testing::SmallPreset(8)).records, a.records);
}

TEST(Generate, RecordsAreValidAndOrdered) {
  const SynthCorpus c = Generate(testing::SmallPreset(1));
  std::set<std::string> ids;
  for (size_t i = 0; i < c.records.size(); ++i) {
    EXPECT_EQ(ingest::ValidateRecord(c.records[i]), "");
    EXPECT_TRUE(ids.insert(c.records[i].tweet_id).second);
    if (i > 0) EXPECT_LE(c.records[i - 1].created_at, c.records[i].created_at);
  }
}

TEST(Generate, ZeroActivationGivesSingletonTrees) {
  GeneratorParams p = testing::SmallPreset(3);
  for (GroupParams& g : p.groups) g.activation = 0.0;
  const SynthCorpus c = Generate(p);
  const forest::ReplyForest f = forest::BuildForest(c.records, c.seeds);
  ASSERT_FALSE(f.trees.empty());
  for (const forest::ReplyTree& t : f.trees) EXPECT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(c.tally.replies, 0u);
}

TEST(Generate, RejectsInfeasibleParams) {
  GeneratorParams p = testing::SmallPreset(1);
  for (GroupParams& g : p.groups) g.seeds = 0;
  EXPECT_THROW(Generate(p), Error);

  p = testing::SmallPreset(1);
  p.groups[kMinority].types[0].preference = {0.5, 0.5, 0.5, 0.0};
  EXPECT_THROW(ValidateParams(p), Error);

  p = testing::SmallPreset(1);
  p.window_last_week = p.weeks + 1;
  EXPECT_THROW(ValidateParams(p), Error);

  p = testing::SmallPreset(1);
  p.groups[kOutsider].seeds = 1;
  EXPECT_THROW(ValidateParams(p), Error);
}

// Every active non-seed member writes at least one reply, so the share of
// reply authors per group is binomial in the activation.
TEST(Generate, ActivationConvergesToPlantedValues) {
  const SynthCorpus c = Generate(PolarizedPreset(11));
  std::set<std::string> repliers;
  for (const auto& r : c.records) {
    if (r.kind == RecordKind::kReply) repliers.insert(r.author_id);
  }
  const GeneratorParams p = PolarizedPreset(11);
  for (int g = 0; g < kGroupCount; ++g) {
    double n = 0.0;
    double active = 0.0;
    for (const auto& [user, group] : c.group) {
      if (group != g || c.seeds.Contains(user)) continue;
      n += 1.0;
      active += repliers.count(user);
    }
    const double a = p.groups[g].activation;
    const double se = std::sqrt(a * (1.0 - a) / n);
    EXPECT_NEAR(active / n, a, 3.0 * se) << "group " << g;
  }
}

TEST(Generate, SymmetricGroupsEngageSymmetrically) {
  GeneratorParams p = PolarizedPreset(5);
  GroupParams side = p.groups[kMinority];
  side.size = 3000;
  side.seeds = 15;
  side.types = {{1.0, {0.6, 0.3, 0.05, 0.05}, 0.5}};
  p.groups[kMajority] = side;
  p.groups[kMinority] = side;
  p.groups[kMinority].types = {{1.0, {0.3, 0.6, 0.05, 0.05}, 0.5}};
  p.affinity = {{{1.0, 0.1, 0.05}, {0.1, 1.0, 0.05}, {0.25, 0.25, 1.0}}};
  const SynthCorpus c = Generate(p);
  std::array<double, kGroupCount> replies{};
  for (const auto& r : c.records) {
    if (r.kind == RecordKind::kReply) replies[c.group.at(r.author_id)] += 1.0;
  }
  // Reply counts are sums over ~1200 active users with geometric counts;
  // allow six standard errors of the difference.
  const double total = replies[kMajority] + replies[kMinority];
  const double active = 3000 * side.activation;
  const double per_user_sd = std::sqrt(side.mean_replies * (side.mean_replies - 1.0)) +
                             1.0;
  const double se = std::sqrt(2.0 * active) * per_user_sd;
  EXPECT_LT(std::abs(replies[kMajority] - replies[kMinority]), 6.0 * se) << total;
}

TEST(Generate, RetweetOddsFollowTheBlockStructure) {
  const SynthCorpus c = Generate(PolarizedPreset(2));
  std::array<std::array<double, 3>, 3> counts{};
  for (const auto& r : c.records) {
    if (r.kind != RecordKind::kRetweet) continue;
    const int from = c.group.at(r.author_id);
    const int to = c.group.at(*r.ref_user_id);
    if (from < 3 && to < 3) counts[from][to] += 1.0;
  }
  // Affinity sets the odds of the target group directly: 1.0 vs 0.1.
  EXPECT_NEAR(counts[0][0] / counts[0][1], 10.0, 1.0);
  EXPECT_NEAR(counts[1][1] / counts[1][0], 10.0, 1.0);
}

TEST(Generate, PresetTreesAreMostlySmallAndShallow) {
  const SynthCorpus c = Generate(PolarizedPreset(1));
  const auto records = ingest::ApplyCorpusFilter(c.records, c.filter);
  const forest::ReplyForest f = forest::BuildForest(records, c.seeds);
  double small = 0.0;
  double shallow = 0.0;
  for (const forest::ReplyTree& t : f.trees) {
    const forest::TreeMetrics m = forest::ComputeTreeMetrics(t);
    small += m.size < 10;
    shallow += m.depth < 5;
  }
  const double n = static_cast<double>(f.trees.size());
  EXPECT_GT(n, 1000.0);
  EXPECT_NEAR(small / n, 0.9, 0.05);
  EXPECT_NEAR(shallow / n, 0.9, 0.075);
}

TEST(Params, JsonRoundTrip) {
  GeneratorParams p = PolarizedPreset(99);
  p.reply_back = 0.25;
  p.groups[kIntermediate].types.push_back({0.0, {0.25, 0.25, 0.25, 0.25}, 0.1});
  const std::string json = ParamsToJson(p);
  EXPECT_EQ(ParamsToJson(ParamsFromJson(json)), json);
  EXPECT_EQ(ParamsFromJson(json).seed, 99u);
  EXPECT_THROW(ParamsFromJson("[1,2]"), Error);
  EXPECT_THROW(ParamsFromJson(R"({"affinity":[[1,2]]})"), Error);
  EXPECT_THROW(ParamsFromJson("{"), Error);
}

TEST(Truth, CsvRoundTrip) {
  const SynthCorpus c = Generate(testing::SmallPreset(6, 20));
  std::ostringstream out;
  WriteTruthCsv(c, out);
  std::istringstream in(out.str());
  const std::map<std::string, classify::Label> truth = ReadTruthCsv(in);
  EXPECT_EQ(truth.size(), c.group.size());
  for (const auto& [user, label] : truth) EXPECT_EQ(label, c.TruthLabel(user));
}

}  // namespace
}  // namespace debatenet::synth
