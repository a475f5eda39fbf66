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

#include "layout/force_layout.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "common/error.hpp"
#include "oracles.hpp"

namespace debatenet::layout {
namespace {

double Norm(Vec2 v) { return std::hypot(v.x, v.y); }

double Distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Two planted blocks of `size` nodes, ids "a<i>" and "b<i>".
graph::InteractionGraph TwoBlocks(int size, double p_in, double p_out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in(p_in);
  std::bernoulli_distribution out(p_out);
  graph::InteractionGraph g;
  auto name = [&](int i) { return (i < size ? "a" : "b") + std::to_string(i % size); };
  for (int i = 0; i < 2 * size; ++i) g.AddNode(name(i));
  for (int i = 0; i < 2 * size; ++i) {
    for (int j = 0; j < 2 * size; ++j) {
      if (i == j) continue;
      const bool same = (i < size) == (j < size);
      if (same ? in(rng) : out(rng)) g.AddInteraction(name(i), name(j));
    }
  }
  return g;
}

TEST(Spatialize, SingleNodeWithoutGravityStaysPut) {
  graph::InteractionGraph g;
  g.AddNode("only");
  LayoutParams params;
  params.gravity = 0.0;
  params.iterations = 50;
  const std::vector<Vec2> start = {{3.0, -4.0}};
  const LayoutEmbedding e = SpatializeFrom(g, params, 1, start);
  EXPECT_EQ(e.positions[0], start[0]);
}

TEST(Spatialize, TwoNodeEquilibriumDistance) {
  for (double k_r : {0.5, 2.0, 10.0}) {
    graph::InteractionGraph g;
    g.AddInteraction("a", "b");
    LayoutParams params;
    params.repulsion = k_r;
    params.gravity = 0.0;
    params.edge_weight_influence = 0.0;
    params.iterations = 3000;
    const LayoutEmbedding e = Spatialize(g, params, 5);
    const double expected = 2.0 * std::sqrt(k_r);
    EXPECT_NEAR(Distance(e.positions[0], e.positions[1]), expected, 0.05 * expected)
        << "k_r " << k_r;
  }
}

TEST(Repulsion, TwoBodiesAreEqualAndOpposite) {
  const std::vector<Vec2> p = {{-1.0, 0.5}, {2.0, -0.5}};
  const std::vector<std::uint32_t> deg = {3, 3};
  const std::vector<Vec2> f = RepulsionExact(p, deg, 2.0);
  EXPECT_DOUBLE_EQ(f[0].x, -f[1].x);
  EXPECT_DOUBLE_EQ(f[0].y, -f[1].y);
  // (deg+1)^2 k_r / d pointing away from the other body.
  const double d = Distance(p[0], p[1]);
  EXPECT_NEAR(Norm(f[0]), 16.0 * 2.0 / d, 1e-12);
  EXPECT_LT(f[0].x, 0.0);
}

TEST(Repulsion, EquilateralTrianglePushesRadially) {
  std::vector<Vec2> p;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * M_PI * k / 3.0;
    p.push_back({std::cos(angle), std::sin(angle)});
  }
  const std::vector<std::uint32_t> deg = {2, 2, 2};
  const std::vector<Vec2> f = RepulsionExact(p, deg, 1.0);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(Norm(f[k]), Norm(f[0]), 1e-12);
    const double cross = f[k].x * p[k].y - f[k].y * p[k].x;
    EXPECT_NEAR(cross, 0.0, 1e-12);
    EXPECT_GT(f[k].x * p[k].x + f[k].y * p[k].y, 0.0);
  }
}

TEST(Repulsion, BarnesHutMatchesExactAtThetaHalf) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  for (int fixture = 0; fixture < 10; ++fixture) {
    std::vector<Vec2> p(100);
    std::vector<std::uint32_t> deg(100);
    for (size_t i = 0; i < p.size(); ++i) {
      p[i] = {coord(rng), coord(rng)};
      deg[i] = static_cast<std::uint32_t>(rng() % 12);
    }
    const std::vector<Vec2> exact = RepulsionExact(p, deg, 2.0);
    const std::vector<Vec2> approx = RepulsionBarnesHut(p, deg, 2.0, 0.5);
    double err = 0.0;
    double norm = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
      err += std::pow(Norm({exact[i].x - approx[i].x, exact[i].y - approx[i].y}), 2);
      norm += std::pow(Norm(exact[i]), 2);
    }
    EXPECT_LE(std::sqrt(err / norm), 0.05) << "fixture " << fixture;
  }
}

TEST(Repulsion, BarnesHutIsAccurateAtTwoThousandNodes) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> coord(0.0, 30.0);
  std::vector<Vec2> p(2000);
  std::vector<std::uint32_t> deg(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = {coord(rng), coord(rng)};
    deg[i] = static_cast<std::uint32_t>(rng() % 20);
  }
  const std::vector<Vec2> exact = RepulsionExact(p, deg, 1.0);
  const std::vector<Vec2> approx = RepulsionBarnesHut(p, deg, 1.0, 0.5);
  double err = 0.0;
  double norm = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    err += std::pow(Norm({exact[i].x - approx[i].x, exact[i].y - approx[i].y}), 2);
    norm += std::pow(Norm(exact[i]), 2);
  }
  EXPECT_LE(std::sqrt(err / norm), 0.05);
}

TEST(Spatialize, BitIdenticalAcrossWorkerCounts) {
  const graph::InteractionGraph g = TwoBlocks(150, 0.05, 0.004, 3);
  for (RepulsionMethod method : {RepulsionMethod::kExact, RepulsionMethod::kBarnesHut}) {
    LayoutParams params;
    params.iterations = 150;
    params.repulsion_method = method;
    params.threads = 1;
    const LayoutEmbedding one = Spatialize(g, params, 42);
    for (int threads : {2, 8}) {
      params.threads = threads;
      const LayoutEmbedding many = Spatialize(g, params, 42);
      EXPECT_EQ(one.positions, many.positions) << threads << " workers";
    }
    params.threads = 1;
    EXPECT_EQ(Spatialize(g, params, 42).positions, one.positions);
    EXPECT_NE(Spatialize(g, params, 43).positions, one.positions);
  }
}

// Rounding differences between the shifted copies grow geometrically under the
// adaptive speed, so the comparison uses a short run.
TEST(Spatialize, TranslationEquivariantWithoutGravity) {
  std::mt19937_64 rng(8);
  const graph::InteractionGraph g = testing::RandomDigraph(30, 0.1, rng);
  LayoutParams params;
  params.gravity = 0.0;
  params.iterations = 20;
  params.repulsion_method = RepulsionMethod::kExact;
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::vector<Vec2> start(g.node_count());
  for (Vec2& v : start) v = {coord(rng), coord(rng)};
  std::vector<Vec2> shifted = start;
  const Vec2 offset = {125.0, -40.0};
  for (Vec2& v : shifted) v = {v.x + offset.x, v.y + offset.y};
  const LayoutEmbedding a = SpatializeFrom(g, params, 1, start);
  const LayoutEmbedding b = SpatializeFrom(g, params, 1, shifted);
  for (size_t i = 0; i < start.size(); ++i) {
    EXPECT_NEAR(b.positions[i].x - a.positions[i].x, offset.x, 1e-7);
    EXPECT_NEAR(b.positions[i].y - a.positions[i].y, offset.y, 1e-7);
  }
}

TEST(Spatialize, EnergyTrendsDownInTheSecondHalf) {
  for (std::uint64_t seed : {1, 2, 3}) {
    graph::InteractionGraph g = graph::GiantComponent(TwoBlocks(100, 0.06, 0.005, seed));
    LayoutParams params;
    params.iterations = 400;
    params.track_energy = true;
    const LayoutEmbedding e = Spatialize(g, params, seed);
    ASSERT_EQ(e.energy.size(), 400u);
    // Least-squares slope over the second half.
    const size_t start = e.energy.size() / 2;
    const double n = static_cast<double>(e.energy.size() - start);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t t = start; t < e.energy.size(); ++t) {
      const double x = static_cast<double>(t);
      sx += x;
      sy += e.energy[t];
      sxx += x * x;
      sxy += x * e.energy[t];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_LE(slope, 0.0) << "seed " << seed;
    EXPECT_LE(e.energy.back(), e.energy[start]) << "seed " << seed;
  }
}

TEST(Spatialize, PlantedBlocksSeparate) {
  for (std::uint64_t seed : {4, 5}) {
    const graph::InteractionGraph g = TwoBlocks(150, 0.06, 0.006, seed);
    LayoutParams params;
    params.iterations = 600;
    const LayoutEmbedding e = Spatialize(g, params, seed);
    Vec2 centroid[2];
    int count[2] = {0, 0};
    for (size_t i = 0; i < e.ids.size(); ++i) {
      const int b = e.ids[i][0] == 'b';
      centroid[b].x += e.positions[i].x;
      centroid[b].y += e.positions[i].y;
      ++count[b];
    }
    for (int b = 0; b < 2; ++b) {
      centroid[b].x /= count[b];
      centroid[b].y /= count[b];
    }
    double spread = 0.0;
    for (size_t i = 0; i < e.ids.size(); ++i) {
      spread += Distance(e.positions[i], centroid[e.ids[i][0] == 'b']);
    }
    spread /= static_cast<double>(e.ids.size());
    EXPECT_GT(Distance(centroid[0], centroid[1]), 3.0 * spread) << "seed " << seed;
  }
}

TEST(LayoutParams, RejectsBadValues) {
  LayoutParams params;
  params.repulsion = -1.0;
  EXPECT_THROW(ValidateLayoutParams(params), Error);
  params = LayoutParams();
  params.theta = 0.0;
  EXPECT_THROW(ValidateLayoutParams(params), Error);
  params = LayoutParams();
  params.iterations = -5;
  EXPECT_THROW(ValidateLayoutParams(params), Error);
  EXPECT_NO_THROW(ValidateLayoutParams(LayoutParams()));
}

TEST(EmbeddingCsv, RoundTripIsExact) {
  std::mt19937_64 rng(2);
  const graph::InteractionGraph g = testing::RandomDigraph(20, 0.2, rng);
  LayoutParams params;
  params.iterations = 20;
  const LayoutEmbedding e = Spatialize(g, params, 9);
  std::ostringstream out;
  WriteEmbeddingCsv(e, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "node_id,x,y");
  std::istringstream in(out.str());
  const LayoutEmbedding back = ReadEmbeddingCsv(in);
  EXPECT_EQ(back.ids, e.ids);
  EXPECT_EQ(back.positions, e.positions);
}

}  // namespace
}  // namespace debatenet::layout
