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

#include "assort/assortativity.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "common/error.hpp"
#include "oracles.hpp"

namespace debatenet::assort {
namespace {

using classify::ClusterAssignment;
using classify::Label;
using classify::Provenance;
using graph::InteractionGraph;

InteractionGraph CompleteBipartite(int per_side, std::vector<int>& groups) {
  InteractionGraph g;
  for (int i = 0; i < per_side; ++i) {
    for (int j = 0; j < per_side; ++j) {
      g.AddInteraction("a" + std::to_string(i), "b" + std::to_string(j));
      g.AddInteraction("b" + std::to_string(j), "a" + std::to_string(i));
    }
  }
  groups.assign(g.node_count(), 0);
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) {
    groups[v] = g.id(v)[0] == 'a' ? 0 : 1;
  }
  return g;
}

TEST(GlobalAssortativity, AllIntraGroupEdgesGiveOne) {
  InteractionGraph g;
  g.AddInteraction("a1", "a2");
  g.AddInteraction("a2", "a1");
  g.AddInteraction("b1", "b2");
  g.AddInteraction("c1", "c2");
  std::vector<int> groups(g.node_count());
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) groups[v] = g.id(v)[0] - 'a';
  EXPECT_DOUBLE_EQ(GlobalAssortativity(g, groups).r, 1.0);
}

TEST(GlobalAssortativity, CompleteBipartiteGivesMinusOne) {
  std::vector<int> groups;
  const InteractionGraph g = CompleteBipartite(4, groups);
  EXPECT_NEAR(GlobalAssortativity(g, groups).r, -1.0, 1e-12);
}

TEST(GlobalAssortativity, ShuffledLabelsAverageNearZero) {
  std::mt19937_64 rng(11);
  const InteractionGraph g = testing::RandomDigraph(120, 0.05, rng);
  std::vector<int> groups(g.node_count());
  for (size_t i = 0; i < groups.size(); ++i) groups[i] = static_cast<int>(i % 3);
  double sum = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::shuffle(groups.begin(), groups.end(), rng);
    sum += GlobalAssortativity(g, groups).r;
  }
  EXPECT_LT(std::abs(sum / 100.0), 0.05);
}

TEST(GlobalAssortativity, SingleGroupReportsOneWithFlag) {
  InteractionGraph g;
  g.AddInteraction("x", "y");
  std::vector<int> groups = {1, 1};
  const GlobalResult result = GlobalAssortativity(g, groups);
  EXPECT_TRUE(result.single_group);
  EXPECT_EQ(result.r, 1.0);
}

TEST(GlobalAssortativity, NoLabeledEdgeIsAnError) {
  InteractionGraph g;
  g.AddInteraction("x", "y");
  std::vector<int> groups = {0, -1};
  try {
    GlobalAssortativity(g, groups);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kData);
  }
}

TEST(GlobalAssortativity, MatchesEnumerationOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const InteractionGraph g = testing::RandomDigraph(15, 0.3, rng);
    std::vector<int> groups(g.node_count());
    for (int& x : groups) x = static_cast<int>(rng() % 3);
    if (g.edge_count() == 0) continue;
    const auto oracle = testing::GlobalMixingOracle(g, groups);
    const GlobalResult result = GlobalAssortativity(g, groups);
    if (result.single_group) continue;
    EXPECT_NEAR(result.r, testing::GlobalROracle(oracle), 1e-12);
    for (int a = 0; a < 3; ++a) {
      EXPECT_NEAR(result.mixing.a[a], oracle.a[a], 1e-12);
      EXPECT_NEAR(result.mixing.b[a], oracle.b[a], 1e-12);
    }
  }
}

TEST(PersonalizedPageRank, IsolatedFocalStaysPut) {
  InteractionGraph g;
  g.AddNode("alone");
  g.AddInteraction("x", "y");
  const std::vector<double> w = PersonalizedPageRank(g, 0);
  EXPECT_DOUBLE_EQ(w[0], 1.0);
  EXPECT_DOUBLE_EQ(w[1], 0.0);
  EXPECT_DOUBLE_EQ(w[2], 0.0);
}

TEST(PersonalizedPageRank, TwoNodeFixedPoint) {
  InteractionGraph g;
  g.AddInteraction("l", "o");
  g.AddInteraction("o", "l");
  const double alpha = 0.85;
  Eigen::Matrix2d m;
  m << 1.0, -alpha, -alpha, 1.0;
  const Eigen::Vector2d solved = m.inverse() * Eigen::Vector2d(1.0 - alpha, 0.0);
  const std::vector<double> w = PersonalizedPageRank(g, 0);
  EXPECT_NEAR(w[0], solved(0), 1e-10);
  EXPECT_NEAR(w[1], solved(1), 1e-10);
  EXPECT_NEAR(w[0], 1.0 / (1.0 + alpha), 1e-10);
}

TEST(PersonalizedPageRank, SmallDampingConcentratesOnFocal) {
  InteractionGraph g;
  for (int i = 0; i + 1 < 10; ++i) {
    g.AddInteraction("p" + std::to_string(i), "p" + std::to_string(i + 1));
  }
  PprOptions options;
  options.damping = 0.01;
  const std::vector<double> w = PersonalizedPageRank(g, 4, options);
  EXPECT_GT(w[4], 0.98);
}

TEST(PersonalizedPageRank, MatchesDenseSolve) {
  std::mt19937_64 rng(3);
  for (double alpha : {0.5, 0.85, 0.99}) {
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 9);
      const InteractionGraph g = testing::RandomDigraph(n, 0.25, rng);
      for (bool directed : {false, true}) {
        PprOptions options;
        options.damping = alpha;
        options.walk = directed ? WalkGraph::kDirected : WalkGraph::kUndirected;
        const int focal = static_cast<int>(rng() % n);
        const std::vector<double> w = PersonalizedPageRank(g, focal, options);
        const Eigen::VectorXd oracle = testing::DensePpr(g, focal, alpha, directed);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
          EXPECT_NEAR(w[i], oracle(i), 1e-8);
          sum += w[i];
        }
        EXPECT_NEAR(sum, 1.0, 1e-10);
      }
    }
  }
}

TEST(PersonalizedPageRank, RejectsBadDamping) {
  InteractionGraph g;
  g.AddInteraction("a", "b");
  for (double alpha : {0.0, 1.0, -0.2}) {
    PprOptions options;
    options.damping = alpha;
    EXPECT_THROW(PersonalizedPageRank(g, 0, options), Error);
  }
}

TEST(PersonalizedPageRank, ReportsResidualWhenNotConverged) {
  InteractionGraph g;
  for (int i = 0; i < 6; ++i) {
    g.AddInteraction("c" + std::to_string(i), "c" + std::to_string((i + 1) % 6));
  }
  PprOptions options;
  options.max_iterations = 2;
  try {
    PersonalizedPageRank(g, 0, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConvergence);
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}

TEST(LocalMixing, StarWithSameGroupLeaves) {
  InteractionGraph g;
  for (int i = 0; i < 4; ++i) g.AddInteraction("center", "leaf" + std::to_string(i));
  const std::vector<int> groups(g.node_count(), 0);
  std::vector<double> w(g.node_count(), 0.0);
  w[0] = 1.0;
  const LocalMixing m = ComputeLocalMixing(g, groups, w);
  EXPECT_DOUBLE_EQ(m.e[0][0], 1.0);
  EXPECT_DOUBLE_EQ(m.z, 1.0);
}

TEST(LocalMixing, StarWithOtherGroupLeaves) {
  InteractionGraph g;
  for (int i = 0; i < 4; ++i) g.AddInteraction("center", "leaf" + std::to_string(i));
  std::vector<int> groups(g.node_count(), 1);
  groups[0] = 0;
  std::vector<double> w(g.node_count(), 0.0);
  w[0] = 1.0;
  const LocalMixing m = ComputeLocalMixing(g, groups, w);
  EXPECT_DOUBLE_EQ(m.e[0][1], 1.0);
  EXPECT_DOUBLE_EQ(m.e[0][0], 0.0);
}

TEST(LocalMixing, TwoTrianglesAtTheBridge) {
  InteractionGraph g;
  const char* edges[][2] = {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"d", "e"},
                            {"e", "f"}, {"f", "d"}, {"c", "d"}};
  for (const auto& e : edges) g.AddInteraction(e[0], e[1]);
  const std::vector<int> groups = {0, 0, 1, 1, 2, 2};
  const graph::NodeIndex bridge = *g.Find("c");
  const std::vector<double> w = PersonalizedPageRank(g, bridge);
  const LocalMixing m = ComputeLocalMixing(g, groups, w);
  const Eigen::VectorXd w_oracle = testing::DensePpr(g, static_cast<int>(bridge), 0.85);
  const auto oracle = testing::LocalMixingOracle(g, groups, w_oracle);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(m.e[a][b], oracle.e[a][b], 1e-9);
  }
  EXPECT_NEAR(m.z, oracle.z, 1e-9);
}

TEST(LocalAssortativity, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 19);
    const InteractionGraph g = testing::RandomDigraph(n, 0.2, rng);
    std::vector<int> groups(n);
    for (int& x : groups) x = static_cast<int>(rng() % 3);
    if (g.edge_count() == 0) continue;
    const GlobalResult global = GlobalAssortativity(g, groups);
    if (global.single_group) continue;
    const auto global_oracle = testing::GlobalMixingOracle(g, groups);
    for (int focal = 0; focal < n; ++focal) {
      const LocalResult local = LocalAssortativity(g, groups, focal);
      const auto oracle = testing::LocalMixingOracle(
          g, groups, testing::DensePpr(g, focal, 0.85));
      EXPECT_NEAR(local.z, oracle.z, 1e-9);
      EXPECT_EQ(local.flagged, oracle.z == 0.0);
      if (!local.flagged) {
        EXPECT_NEAR(local.r, testing::LocalROracle(oracle, global_oracle), 1e-9);
        EXPECT_LE(local.r, 1.0 + 1e-12);
      }
      EXPECT_GE(local.z, 0.0);
      EXPECT_LE(local.z, 1.0 + 1e-12);
    }
  }
}

TEST(LocalAssortativity, PerfectlyAssortativeGivesOne) {
  InteractionGraph g;
  for (int i = 0; i < 5; ++i) {
    g.AddInteraction("x" + std::to_string(i), "x" + std::to_string((i + 1) % 5));
    g.AddInteraction("y" + std::to_string(i), "y" + std::to_string((i + 2) % 5));
  }
  std::vector<int> groups(g.node_count());
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) groups[v] = g.id(v)[0] == 'x' ? 0 : 2;
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) {
    EXPECT_NEAR(LocalAssortativity(g, groups, v).r, 1.0, 1e-12);
  }
}

TEST(LocalAssortativity, CompleteBipartiteGivesMinusOne) {
  std::vector<int> groups;
  const InteractionGraph g = CompleteBipartite(3, groups);
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) {
    EXPECT_NEAR(LocalAssortativity(g, groups, v).r, -1.0, 1e-12);
  }
}

TEST(LocalAssortativity, InvariantUnderLabelPermutation) {
  std::mt19937_64 rng(23);
  const InteractionGraph g = testing::RandomDigraph(18, 0.2, rng);
  std::vector<int> groups(g.node_count());
  for (int& x : groups) x = static_cast<int>(rng() % 3);
  std::vector<int> permuted(groups.size());
  const int perm[3] = {2, 0, 1};
  for (size_t i = 0; i < groups.size(); ++i) permuted[i] = perm[groups[i]];
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) {
    const LocalResult a = LocalAssortativity(g, groups, v);
    const LocalResult b = LocalAssortativity(g, permuted, v);
    EXPECT_NEAR(a.r, b.r, 1e-12);
    EXPECT_NEAR(a.z, b.z, 1e-12);
  }
}

TEST(LocalAssortativity, UnlabeledComponentsDoNotMatter) {
  std::mt19937_64 rng(29);
  const InteractionGraph core = testing::RandomDigraph(12, 0.25, rng);
  std::vector<int> core_groups(core.node_count());
  for (int& x : core_groups) x = static_cast<int>(rng() % 3);
  InteractionGraph extended = core;
  extended.AddInteraction("u1", "u2");
  extended.AddInteraction("u2", "u3");
  extended.AddNode("u4");
  std::vector<int> extended_groups = core_groups;
  extended_groups.resize(extended.node_count(), -1);
  for (graph::NodeIndex v = 0; v < core.node_count(); ++v) {
    const LocalResult a = LocalAssortativity(core, core_groups, v);
    const LocalResult b = LocalAssortativity(extended, extended_groups, v);
    EXPECT_EQ(a.flagged, b.flagged);
    EXPECT_NEAR(a.r, b.r, 1e-12);
    EXPECT_NEAR(a.z, b.z, 1e-12);
  }
}

TEST(LocalAssortativity, NoReachableLabeledMassIsFlagged) {
  InteractionGraph g;
  g.AddInteraction("a", "b");
  g.AddInteraction("c", "d");
  const std::vector<int> groups = {-1, -1, 0, 1};
  const LocalResult r = LocalAssortativity(g, groups, 0);
  EXPECT_TRUE(r.flagged);
  EXPECT_EQ(r.z, 0.0);
}

ClusterAssignment AssignmentFromGroups(const InteractionGraph& g,
                                       const std::vector<int>& groups) {
  ClusterAssignment assignment;
  for (graph::NodeIndex v = 0; v < g.node_count(); ++v) {
    if (groups[v] >= 0) {
      assignment.Set(g.id(v), static_cast<Label>(groups[v]), Provenance::kEventNetwork);
    }
  }
  return assignment;
}

TEST(Profile, MatchesPerNodeComputationForAnyThreadCount) {
  std::mt19937_64 rng(31);
  const InteractionGraph g = testing::RandomDigraph(40, 0.08, rng);
  std::vector<int> groups(g.node_count());
  for (int& x : groups) x = static_cast<int>(rng() % 4) - 1;
  const ClusterAssignment assignment = AssignmentFromGroups(g, groups);
  const AssortativityProfile one = ComputeProfile(g, assignment, {}, 1);
  for (int threads : {2, 8}) {
    const AssortativityProfile many = ComputeProfile(g, assignment, {}, threads);
    ASSERT_EQ(one.entries.size(), many.entries.size());
    for (size_t i = 0; i < one.entries.size(); ++i) {
      EXPECT_EQ(one.entries[i].r, many.entries[i].r);
      EXPECT_EQ(one.entries[i].z, many.entries[i].z);
    }
  }
  for (const ProfileEntry& entry : one.entries) {
    const LocalResult single = LocalAssortativity(g, groups, *g.Find(entry.user));
    EXPECT_EQ(entry.flagged, single.flagged);
    EXPECT_NEAR(entry.z, single.z, 1e-10);
    if (!entry.flagged) EXPECT_NEAR(entry.r, single.r, 1e-10);
  }
}

AssortativityProfile ManualProfile(const std::vector<std::pair<double, double>>& rz,
                                   Label label = Label::kMajority) {
  AssortativityProfile profile;
  int k = 0;
  for (const auto& [r, z] : rz) {
    profile.entries.push_back({"n" + std::to_string(k++), label, r, z, false});
  }
  return profile;
}

TEST(Histogram, AllOnesFillTheTopBin) {
  const Histogram h = AssortHistogram(ManualProfile({{1.0, 0.5}, {1.0, 0.5}, {1.0, 0.5}}));
  ASSERT_EQ(h.bins(), 40u);
  for (size_t k = 0; k + 1 < h.bins(); ++k) EXPECT_EQ(h.mass[k][3], 0.0);
  EXPECT_DOUBLE_EQ(h.mass.back()[3], 1.5);
  EXPECT_DOUBLE_EQ(h.mass.back()[0], 1.5);
}

TEST(Histogram, MassFollowsZWeights) {
  const Histogram h = AssortHistogram(ManualProfile({{-1.0, 0.2}, {1.0, 0.8}}));
  EXPECT_DOUBLE_EQ(h.mass.front()[3], 0.2);
  EXPECT_DOUBLE_EQ(h.mass.back()[3], 0.8);
  EXPECT_DOUBLE_EQ(h.mass.back()[3] / h.mass.front()[3], 4.0);
}

TEST(Histogram, FlaggedNodesAreExcluded) {
  AssortativityProfile profile = ManualProfile({{0.5, 0.3}});
  profile.entries.push_back({"f", Label::kMinority, 0.0, 0.0, true});
  const Histogram h = AssortHistogram(profile);
  double total = 0.0;
  for (const auto& row : h.mass) total += row[3];
  EXPECT_DOUBLE_EQ(total, 0.3);
}

// Two planted behavioural types in disjoint components: closed in-group
// circles (every node r = 1) and mixed 4-cliques with labels g,g,h,h where
// each node sends one of three edges in-group. Global marginals are uniform
// over two groups, so the mixed type's r is (1/3 - 1/2) / (1/2) = -1/3.
TEST(Histogram, PlantedTypesGiveModesAtTheirMeans) {
  InteractionGraph g;
  std::vector<int> groups;
  auto add = [&](const std::string& id, int group) {
    if (!g.Contains(id)) {
      g.AddNode(id);
      groups.push_back(group);
    }
  };
  for (int c = 0; c < 30; ++c) {
    for (int side = 0; side < 2; ++side) {
      std::vector<std::string> ids;
      for (int i = 0; i < 4; ++i) {
        ids.push_back(fmt::format("loyal{}_{}_{}", c, side, i));
        add(ids.back(), side);
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          if (i != j) g.AddInteraction(ids[i], ids[j]);
        }
      }
    }
    std::vector<std::string> ids;
    for (int i = 0; i < 4; ++i) {
      ids.push_back(fmt::format("mixed{}_{}", c, i));
      add(ids.back(), i < 2 ? 0 : 1);
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) g.AddInteraction(ids[i], ids[j]);
      }
    }
  }
  const ClusterAssignment assignment = AssignmentFromGroups(g, groups);
  const AssortativityProfile profile = ComputeProfile(g, assignment);
  const Histogram h = AssortHistogram(profile, 40);
  // The two largest bins hold the two types.
  std::vector<size_t> order(h.bins());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return h.mass[a][3] > h.mass[b][3]; });
  std::vector<double> modes = {0.5 * (h.edge(order[0]) + h.edge(order[0] + 1)),
                               0.5 * (h.edge(order[1]) + h.edge(order[1] + 1))};
  std::sort(modes.begin(), modes.end());
  const double mixed_mean = -1.0 / 3.0;
  EXPECT_NEAR(modes[0], mixed_mean, 0.1);
  EXPECT_NEAR(modes[1], 1.0, 0.1);
}

TEST(ProfileCsv, HasDocumentedHeaderAndEmptyRForFlagged) {
  AssortativityProfile profile = ManualProfile({{0.25, 0.5}});
  profile.entries.push_back({"zz", Label::kMinority, 0.0, 0.0, true});
  std::ostringstream out;
  WriteProfileCsv(profile, out);
  EXPECT_EQ(out.str(), "user_id,label,r_local,z_weight\nn0,majority,0.25,0.5\nzz,minority,,0\n");
  std::ostringstream hist;
  WriteHistogramCsv(AssortHistogram(profile, 2), hist);
  EXPECT_EQ(hist.str().substr(0, hist.str().find('\n')),
            "bin_lo,bin_hi,mass_majority,mass_minority,mass_intermediate,mass_all");
}

}  // namespace
}  // namespace debatenet::assort
