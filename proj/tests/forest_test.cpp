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

#include "forest/reply_forest.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "common/error.hpp"
#include "forest/forest_io.hpp"
#include "synth/generator.hpp"
#include "test_util.hpp"

namespace debatenet::forest {
namespace {

using ingest::InteractionRecord;
using ingest::RecordKind;

struct Corpus {
  std::vector<InteractionRecord> records;
  ingest::SeedSet seeds;
  std::map<std::string, std::string> author_of;
  std::int64_t clock = 1600000000;

  std::string Post(const std::string& author, bool seed = true) {
    const std::string id = "p" + std::to_string(10000 + records.size());
    if (seed) seeds.user_ids.insert(author);
    records.push_back({id, author, clock++, RecordKind::kOriginal, {}, {}, "", {}});
    author_of[id] = author;
    return id;
  }
  std::string Reply(const std::string& author, const std::string& parent) {
    const std::string id = "p" + std::to_string(10000 + records.size());
    const auto it = author_of.find(parent);
    records.push_back({id, author, clock++, RecordKind::kReply, parent,
                       it == author_of.end() ? std::optional<std::string>{"ghost"}
                                             : std::optional<std::string>{it->second},
                       "", {}});
    author_of[id] = author;
    return id;
  }
  ReplyForest Build(bool strict = false) const {
    return BuildForest(records, seeds, strict);
  }
};

TEST(BuildForest, LoneSeedPost) {
  Corpus c;
  c.Post("s");
  const ReplyForest f = c.Build();
  ASSERT_EQ(f.trees.size(), 1u);
  EXPECT_EQ(ComputeTreeMetrics(f.trees[0]), (TreeMetrics{1, 0, 0}));
}

TEST(BuildForest, ChainOfTwo) {
  Corpus c;
  const std::string r = c.Post("s");
  const std::string x = c.Reply("x", r);
  c.Reply("y", x);
  const ReplyForest f = c.Build();
  ASSERT_EQ(f.trees.size(), 1u);
  EXPECT_EQ(ComputeTreeMetrics(f.trees[0]), (TreeMetrics{3, 2, 1}));
}

TEST(BuildForest, OrphanIsTallied) {
  Corpus c;
  c.Post("s");
  const std::string orphan = c.Reply("x", "missing");
  c.Reply("y", orphan);
  const ReplyForest f = c.Build();
  EXPECT_EQ(f.trees[0].nodes.size(), 1u);
  EXPECT_EQ(f.tally.orphans, 1u);
  EXPECT_EQ(f.tally.detached, 1u);
}

TEST(BuildForest, OnlySeedOriginalsStartTrees) {
  Corpus c;
  const std::string other = c.Post("nobody", false);
  c.Reply("x", other);
  const std::string r = c.Post("s");
  const std::string sr = c.Reply("s", r);  // seed reply inside a tree
  c.Reply("z", sr);
  const ReplyForest f = c.Build();
  ASSERT_EQ(f.trees.size(), 1u);
  EXPECT_EQ(f.trees[0].nodes.size(), 3u);
  EXPECT_EQ(f.tally.outside, 1u);
}

TEST(BuildForest, ReplyOlderThanParentIsDropped) {
  Corpus c;
  const std::string r = c.Post("s");
  const std::string x = c.Reply("x", r);
  c.Reply("y", x);
  c.records[1].created_at = c.records[0].created_at - 10;
  const ReplyForest f = c.Build();
  EXPECT_EQ(f.trees[0].nodes.size(), 1u);
  EXPECT_EQ(f.tally.timestamp_violations, 1u);
  EXPECT_EQ(f.tally.dropped_descendants, 1u);
}

TEST(BuildForest, DuplicateIdsFailInStrictMode) {
  Corpus c;
  c.Post("s");
  c.records.push_back(c.records.front());
  EXPECT_THROW(c.Build(true), Error);
  const ReplyForest f = c.Build(false);
  EXPECT_EQ(f.tally.duplicates, 1u);
}

TEST(TreeMetrics, StarAndPath) {
  Corpus star;
  const std::string r = star.Post("s");
  for (int i = 0; i < 5; ++i) star.Reply("u" + std::to_string(i), r);
  EXPECT_EQ(ComputeTreeMetrics(star.Build().trees[0]), (TreeMetrics{6, 1, 5}));

  Corpus path;
  std::string tip = path.Post("s");
  for (int i = 0; i < 4; ++i) tip = path.Reply("u" + std::to_string(i), tip);
  EXPECT_EQ(ComputeTreeMetrics(path.Build().trees[0]), (TreeMetrics{5, 4, 1}));
}

// Depth by walking every node's parent chain to the root; size and first
// order by direct counting on the generating parent array.
TEST(TreeMetrics, MatchBruteForceOnRandomTrees) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 50);
    std::vector<int> parent(n, -1);
    Corpus c;
    std::vector<std::string> ids = {c.Post("s")};
    for (int i = 1; i < n; ++i) {
      parent[i] = static_cast<int>(rng() % i);
      ids.push_back(c.Reply("u" + std::to_string(rng() % 7), ids[parent[i]]));
    }
    std::shuffle(c.records.begin(), c.records.end(), rng);
    const ReplyForest f = c.Build();
    ASSERT_EQ(f.trees.size(), 1u);
    std::uint64_t depth = 0;
    std::uint64_t first = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t d = 0;
      for (int v = i; parent[v] >= 0; v = parent[v]) ++d;
      depth = std::max(depth, d);
      first += parent[i] == 0;
    }
    const TreeMetrics m = ComputeTreeMetrics(f.trees[0]);
    EXPECT_EQ(m.size, static_cast<std::uint64_t>(n));
    EXPECT_EQ(m.depth, depth);
    EXPECT_EQ(m.first_order, first);
    std::uint64_t depth_one = 0;
    for (const TreeNode& node : f.trees[0].nodes) depth_one += node.depth == 1;
    EXPECT_EQ(depth_one, first);
  }
}

TEST(BuildForest, OrderIndependent) {
  const synth::SynthCorpus corpus = synth::Generate(testing::SmallPreset(4));
  const ReplyForest reference = BuildForest(corpus.records, corpus.seeds);
  std::ostringstream expected;
  WriteForest(reference, expected);
  std::mt19937_64 rng(9);
  std::vector<InteractionRecord> records = corpus.records;
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    const ReplyForest shuffled = BuildForest(records, corpus.seeds);
    std::ostringstream actual;
    WriteForest(shuffled, actual);
    EXPECT_EQ(actual.str(), expected.str());
    EXPECT_EQ(shuffled.tally, reference.tally);
  }
}

TEST(BuildForest, ReplyMassMatchesNetworkOnSyntheticCorpora) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const synth::SynthCorpus corpus = synth::Generate(testing::SmallPreset(seed));
    const ReplyForest f = BuildForest(corpus.records, corpus.seeds);
    std::uint64_t replies = 0;
    for (const ReplyTree& t : f.trees) replies += ComputeTreeMetrics(t).reply_count();
    const graph::InteractionGraph g = AggregateReplyNetwork(f);
    EXPECT_GT(replies, 0u);
    EXPECT_EQ(replies, g.total_weight() + g.self_loop_tally()) << "seed " << seed;
  }
}

TEST(Ccdf, Examples) {
  const std::vector<std::uint64_t> ones = {1, 1, 1};
  EXPECT_EQ(Ccdf(ones), (std::vector<CcdfPoint>{{1, 1.0}}));
  const std::vector<std::uint64_t> values = {4, 1, 2};
  const std::vector<CcdfPoint> c = Ccdf(values);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], (CcdfPoint{1, 1.0}));
  EXPECT_EQ(c[1].threshold, 2u);
  EXPECT_DOUBLE_EQ(c[1].fraction, 2.0 / 3.0);
  EXPECT_EQ(c[2].threshold, 4u);
  EXPECT_DOUBLE_EQ(c[2].fraction, 1.0 / 3.0);
  EXPECT_THROW(Ccdf(std::vector<std::uint64_t>{}), Error);
}

TEST(Ccdf, NonIncreasing) {
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> values(500);
  for (auto& v : values) v = 1 + rng() % 40;
  const std::vector<CcdfPoint> c = Ccdf(values);
  EXPECT_EQ(c.front().fraction, 1.0);
  for (size_t i = 1; i < c.size(); ++i) {
    EXPECT_LT(c[i - 1].threshold, c[i].threshold);
    EXPECT_LE(c[i].fraction, c[i - 1].fraction);
  }
}

TEST(AggregateReplyNetwork, Examples) {
  Corpus c;
  const std::string r1 = c.Post("a");
  const std::string b1 = c.Reply("b", r1);
  c.Reply("c", b1);
  const std::string r2 = c.Post("a");
  c.Reply("b", r2);
  c.Reply("a", r2);  // thread continuation
  const graph::InteractionGraph g = AggregateReplyNetwork(c.Build());
  const auto a = *g.Find("a");
  const auto b = *g.Find("b");
  const auto cc = *g.Find("c");
  EXPECT_EQ(g.weight(b, a), 2u);
  EXPECT_EQ(g.weight(cc, b), 1u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.self_loop_tally(), 1u);
}

TEST(ForestIo, RoundTrip) {
  const synth::SynthCorpus corpus = synth::Generate(testing::SmallPreset(2));
  const ReplyForest f = BuildForest(corpus.records, corpus.seeds);
  std::ostringstream out;
  WriteForest(f, out);
  std::istringstream in(out.str());
  const ReplyForest back = ReadForest(in);
  std::ostringstream again;
  WriteForest(back, again);
  EXPECT_EQ(again.str(), out.str());
  ASSERT_EQ(back.trees.size(), f.trees.size());
  for (size_t i = 0; i < f.trees.size(); ++i) {
    EXPECT_EQ(ComputeTreeMetrics(back.trees[i]), ComputeTreeMetrics(f.trees[i]));
  }
}

TEST(ForestIo, MetricsCsvHeader) {
  Corpus c;
  c.Reply("x", c.Post("s"));
  std::ostringstream out;
  WriteMetricsCsv(c.Build(), out);
  EXPECT_EQ(out.str(), "tree_id,S,D,first_order\np10000,2,1,1\n");
}

}  // namespace
}  // namespace debatenet::forest
