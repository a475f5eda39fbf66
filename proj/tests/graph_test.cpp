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

#include "graph/interaction_graph.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "common/error.hpp"
#include "graph/graph_io.hpp"
#include "oracles.hpp"

namespace debatenet::graph {
namespace {

TEST(AddInteraction, Examples) {
  InteractionGraph g;
  EXPECT_TRUE(g.AddInteraction("a", "b"));
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weight(0, 1), 1u);
  g.AddInteraction("a", "b");
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weight(0, 1), 2u);
  EXPECT_FALSE(g.AddInteraction("a", "a"));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.self_loop_tally(), 1u);
}

TEST(AddInteraction, MassIsConserved) {
  std::mt19937_64 rng(7);
  InteractionGraph g;
  std::uint64_t pairs = 0;
  for (int i = 0; i < 2000; ++i) {
    g.AddInteraction(std::to_string(rng() % 30), std::to_string(rng() % 30));
    ++pairs;
  }
  EXPECT_EQ(g.total_weight() + g.self_loop_tally(), pairs);
  Weight out = 0;
  Weight in = 0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out += g.out_strength(v);
    in += g.in_strength(v);
  }
  EXPECT_EQ(out, g.total_weight());
  EXPECT_EQ(in, g.total_weight());
}

TEST(WeakComponents, Examples) {
  InteractionGraph g;
  g.AddInteraction("a", "b");
  g.AddNode("c");
  const ComponentLabeling c = WeakComponents(g);
  EXPECT_EQ(c.sizes, (std::vector<size_t>{2, 1}));
  EXPECT_EQ(c.component_of, (std::vector<std::uint32_t>{0, 0, 1}));
  EXPECT_TRUE(WeakComponents(InteractionGraph()).sizes.empty());

  InteractionGraph h;
  for (const char* tri : {"abc", "def"}) {
    for (int i = 0; i < 3; ++i) {
      h.AddInteraction(std::string(1, tri[i]), std::string(1, tri[(i + 1) % 3]));
    }
  }
  h.AddInteraction("c", "d");
  EXPECT_EQ(WeakComponents(h).sizes, (std::vector<size_t>{6}));
}

TEST(WeakComponents, TiesGoToTheSmallestId) {
  InteractionGraph g;
  g.AddInteraction("z", "y");
  g.AddInteraction("b", "m");
  const ComponentLabeling c = WeakComponents(g);
  EXPECT_EQ(c.component_of[*g.Find("b")], 0u);
  EXPECT_EQ(GiantComponent(g).ids(), (std::vector<std::string>{"b", "m"}));
}

TEST(WeakComponents, InvariantUnderReversal) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const InteractionGraph g = testing::RandomDigraph(40, 0.03, rng);
    InteractionGraph r;
    for (NodeIndex v = 0; v < g.node_count(); ++v) r.AddNode(g.id(v));
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      for (const auto& [u, w] : g.out_edges(v)) r.AddWeighted(g.id(u), g.id(v), w);
    }
    EXPECT_EQ(WeakComponents(g).component_of, WeakComponents(r).component_of);
  }
}

TEST(Restrict, Examples) {
  InteractionGraph g;
  g.AddInteraction("a", "b");
  g.AddInteraction("b", "c");
  g.AddInteraction("b", "c");
  EXPECT_TRUE(Restrict(g, g.ids()).SameStructure(g));
  EXPECT_TRUE(Restrict(g, std::vector<std::string>{}).empty());
  const std::vector<std::string> ends = {"a", "c"};
  const InteractionGraph r = Restrict(g, ends);
  EXPECT_EQ(r.node_count(), 2u);
  EXPECT_EQ(r.edge_count(), 0u);
  const std::vector<std::string> tail = {"c", "b"};
  EXPECT_EQ(Restrict(g, tail).weight(0, 1), 2u);
}

TEST(EdgeList, RoundTrip) {
  std::mt19937_64 rng(13);
  InteractionGraph g = testing::RandomDigraph(25, 0.1, rng);
  g.AddWeighted("n1", "n2", 5);
  std::ostringstream out;
  WriteEdgeList(g, out);
  std::istringstream in(out.str());
  const InteractionGraph back = ReadEdgeList(in);
  // Isolated nodes have no line in an edge list.
  std::vector<std::string> linked;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (!g.out_edges(v).empty() || !g.in_edges(v).empty()) linked.push_back(g.id(v));
  }
  EXPECT_TRUE(back.SameStructure(Restrict(g, linked)));
}

TEST(EdgeList, RejectsMalformedLines) {
  std::istringstream bad_weight("a\tb\tzero\n");
  EXPECT_THROW(ReadEdgeList(bad_weight), Error);
  std::istringstream missing("a\tb\n");
  EXPECT_THROW(ReadEdgeList(missing), Error);
}

TEST(Graphml, CarriesAttributes) {
  InteractionGraph g;
  g.AddInteraction("a", "b");
  GraphmlAttributes attributes;
  attributes.cluster["a"] = "majority";
  attributes.position["b"] = {1.5, -2.0};
  std::ostringstream out;
  WriteGraphml(g, out, attributes);
  const std::string xml = out.str();
  EXPECT_NE(xml.find("<graphml"), std::string::npos);
  EXPECT_NE(xml.find("majority"), std::string::npos);
  EXPECT_NE(xml.find("1.5"), std::string::npos);
  EXPECT_NE(xml.find("source=\"a\""), std::string::npos);
}

TEST(RetweetNetwork, RetweeterPointsAtAuthor) {
  std::vector<ingest::InteractionRecord> records = {
      {"1", "a", 0, ingest::RecordKind::kOriginal, {}, {}, "", {}},
      {"2", "b", 1, ingest::RecordKind::kRetweet, "1", "a", "", {}},
      {"3", "b", 2, ingest::RecordKind::kRetweet, "1", "a", "", {}},
      {"4", "a", 3, ingest::RecordKind::kRetweet, "1", "a", "", {}},
      {"5", "c", 4, ingest::RecordKind::kReply, "1", "a", "", {}}};
  const InteractionGraph g = BuildRetweetNetwork(records);
  EXPECT_EQ(g.weight(*g.Find("b"), *g.Find("a")), 2u);
  EXPECT_EQ(g.self_loop_tally(), 1u);
  EXPECT_FALSE(g.Contains("c"));
}

}  // namespace
}  // namespace debatenet::graph
