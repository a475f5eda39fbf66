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

#include "classify/clusters.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "classify/geometry.hpp"
#include "common/error.hpp"
#include "layout/force_layout.hpp"

namespace debatenet::classify {
namespace {

using layout::LayoutEmbedding;

Region Square(const std::string& name, double x0, double y0, double x1, double y1) {
  return {name, RegionShape::kPolygon, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

// The half-planes x <= -gap and x >= gap.
BoundarySpec VerticalSplit(double gap) {
  return {{"west", RegionShape::kPolyline, {{-gap, -1.0}, {-gap, 1.0}}},
          {"east", RegionShape::kPolyline, {{gap, 1.0}, {gap, -1.0}}}};
}

LayoutEmbedding Embedding(std::vector<std::pair<std::string, Vec2>> points) {
  LayoutEmbedding e;
  for (auto& [id, p] : points) {
    e.ids.push_back(id);
    e.positions.push_back(p);
  }
  return e;
}

TEST(AssignClusters, EverythingInsideOneRegion) {
  const LayoutEmbedding e = Embedding({{"a", {1, 1}}, {"b", {2, 2}}, {"c", {1.5, 1.2}}});
  const BoundarySpec spec{Square("left", 0, 0, 3, 3), Square("right", 10, 0, 12, 3)};
  const AssignmentResult r = AssignClusters(e, spec);
  EXPECT_EQ(r.majority_region, "left");
  for (const auto& [user, c] : r.assignment.entries()) {
    EXPECT_EQ(c.label, Label::kMajority) << user;
    EXPECT_EQ(c.provenance, Provenance::kEventNetwork);
  }
}

TEST(AssignClusters, EdgePointsBelongToTheRegion) {
  const LayoutEmbedding e = Embedding(
      {{"edge", {3, 1}}, {"corner", {0, 0}}, {"out", {5, 5}}, {"far", {11, 1}},
       {"far2", {11, 2}}, {"far3", {11.5, 2}}});
  const BoundarySpec spec{Square("left", 0, 0, 3, 3), Square("right", 10, 0, 12, 3)};
  const AssignmentResult r = AssignClusters(e, spec);
  EXPECT_EQ(r.majority_region, "right");
  EXPECT_EQ(r.assignment.LabelOf("edge"), Label::kMinority);
  EXPECT_EQ(r.assignment.LabelOf("corner"), Label::kMinority);
  EXPECT_EQ(r.assignment.LabelOf("out"), Label::kIntermediate);
  EXPECT_EQ(r.assignment.LabelOf("far"), Label::kMajority);
}

TEST(AssignClusters, UsersOutsideTheEmbeddingAreUnclassified) {
  const LayoutEmbedding e = Embedding({{"a", {1, 1}}});
  const std::vector<std::string> universe = {"a", "ghost"};
  const AssignmentResult r = AssignClusters(
      e, {Square("p", 0, 0, 2, 2), Square("q", 5, 5, 6, 6)}, universe);
  EXPECT_EQ(r.assignment.LabelOf("ghost"), Label::kUnclassified);
  EXPECT_EQ(r.assignment.LabelOf("a"), Label::kMajority);
}

TEST(AssignClusters, EmbeddedNodesAreNeverUnclassified) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::vector<std::pair<std::string, Vec2>> points;
  for (int i = 0; i < 300; ++i) points.push_back({"u" + std::to_string(i), {coord(rng), coord(rng)}});
  const AssignmentResult r = AssignClusters(Embedding(points), VerticalSplit(2.0));
  const auto counts = r.assignment.LabelCounts();
  EXPECT_EQ(counts[3], 0u);
  EXPECT_EQ(counts[0] + counts[1] + counts[2], 300u);
  EXPECT_GT(counts[2], 0u);
}

TEST(AssignClusters, InvariantUnderRigidMotions) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::vector<std::pair<std::string, Vec2>> points;
  for (int i = 0; i < 400; ++i) points.push_back({"u" + std::to_string(i), {coord(rng), coord(rng)}});
  const BoundarySpec spec{
      {"pole", RegionShape::kPolygon, {{-9, -9}, {-1, -8}, {-2, 4}, {-8, 6}}},
      {"cut", RegionShape::kPolyline, {{3, 10}, {2, 0}, {4, -10}}}};
  const ClusterAssignment base = AssignClusters(Embedding(points), spec).assignment;
  for (int trial = 0; trial < 10; ++trial) {
    const double angle = std::uniform_real_distribution<double>(0, 2 * M_PI)(rng);
    const bool mirror = trial % 2 == 1;
    const Vec2 shift{coord(rng), coord(rng)};
    auto move = [&](Vec2 p) {
      if (mirror) p.x = -p.x;
      return Vec2{std::cos(angle) * p.x - std::sin(angle) * p.y + shift.x,
                  std::sin(angle) * p.x + std::cos(angle) * p.y + shift.y};
    };
    std::vector<std::pair<std::string, Vec2>> moved = points;
    for (auto& [id, p] : moved) p = move(p);
    BoundarySpec moved_spec = spec;
    for (Region* region : {&moved_spec.first, &moved_spec.second}) {
      for (Vec2& v : region->vertices) v = move(v);
      // A reflection swaps the sides of a directed boundary.
      if (mirror) std::reverse(region->vertices.begin(), region->vertices.end());
    }
    EXPECT_EQ(AssignClusters(Embedding(moved), moved_spec).assignment, base);
  }
}

// Two planted blocks laid out, then turned so the axis of largest spread is
// horizontal and centred on the mean; the split line is x = 0.
TEST(AssignClusters, PlantedBlocksSplitAtTheOrigin) {
  std::mt19937_64 rng(12);
  std::bernoulli_distribution in(0.05);
  std::bernoulli_distribution out(0.004);
  graph::InteractionGraph g;
  const int size = 200;
  for (int i = 0; i < 2 * size; ++i) g.AddNode((i < size ? "a" : "b") + std::to_string(i));
  for (int i = 0; i < 2 * size; ++i) {
    for (int j = 0; j < 2 * size; ++j) {
      if (i != j && ((i < size) == (j < size) ? in(rng) : out(rng))) {
        g.AddInteraction(g.id(i), g.id(j));
      }
    }
  }
  layout::LayoutParams params;
  params.iterations = 600;
  LayoutEmbedding e = layout::Spatialize(g, params, 7);
  Vec2 mean;
  for (const Vec2& p : e.positions) {
    mean.x += p.x / e.positions.size();
    mean.y += p.y / e.positions.size();
  }
  double sxx = 0, syy = 0, sxy = 0;
  for (const Vec2& p : e.positions) {
    sxx += (p.x - mean.x) * (p.x - mean.x);
    syy += (p.y - mean.y) * (p.y - mean.y);
    sxy += (p.x - mean.x) * (p.y - mean.y);
  }
  const double angle = 0.5 * std::atan2(2 * sxy, sxx - syy);
  for (Vec2& p : e.positions) {
    const Vec2 c{p.x - mean.x, p.y - mean.y};
    p = {std::cos(angle) * c.x + std::sin(angle) * c.y,
         -std::sin(angle) * c.x + std::cos(angle) * c.y};
  }
  const AssignmentResult r = AssignClusters(e, VerticalSplit(1e-9));
  int agree = 0;
  for (const std::string& id : e.ids) {
    const Label label = r.assignment.LabelOf(id);
    const bool west = (label == Label::kMajority) == (r.majority_region == "west");
    agree += west == (id[0] == 'a');
  }
  const double recovered = std::max(agree, 2 * size - agree) / (2.0 * size);
  EXPECT_GE(recovered, 0.95);
}

TEST(FallbackMerge, PrecedenceAndProvenance) {
  ClusterAssignment event;
  event.Set("both", Label::kMinority, Provenance::kEventNetwork);
  event.Set("mid", Label::kIntermediate, Provenance::kEventNetwork);
  ClusterAssignment fallback;
  fallback.Set("both", Label::kMajority, Provenance::kFallbackNetwork);
  fallback.Set("only", Label::kMajority, Provenance::kFallbackNetwork);
  fallback.Set("mid", Label::kMinority, Provenance::kFallbackNetwork);
  const std::vector<std::string> users = {"both", "only", "mid", "none"};
  const ClusterAssignment merged = FallbackMerge(event, fallback, users);
  EXPECT_EQ(merged.Get("both"), (Classification{Label::kMinority, Provenance::kEventNetwork}));
  EXPECT_EQ(merged.Get("only"),
            (Classification{Label::kMajority, Provenance::kFallbackNetwork}));
  EXPECT_EQ(merged.LabelOf("mid"), Label::kIntermediate);
  EXPECT_EQ(merged.LabelOf("none"), Label::kUnclassified);
  EXPECT_EQ(merged.size(), 4u);
}

TEST(FallbackMerge, NeverRelabelsAndRaisesCoverage) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    ClusterAssignment event;
    ClusterAssignment fallback;
    std::vector<std::string> users;
    for (int i = 0; i < 60; ++i) {
      const std::string u = "u" + std::to_string(i);
      users.push_back(u);
      if (rng() % 2) event.Set(u, static_cast<Label>(rng() % 3), Provenance::kEventNetwork);
      if (rng() % 3) fallback.Set(u, static_cast<Label>(rng() % 3), Provenance::kFallbackNetwork);
    }
    const ClusterAssignment merged = FallbackMerge(event, fallback, users);
    bool adds = false;
    for (const std::string& u : users) {
      if (event.LabelOf(u) != Label::kUnclassified) {
        EXPECT_EQ(merged.Get(u), event.Get(u));
      } else if (fallback.LabelOf(u) != Label::kUnclassified) {
        adds = true;
      }
    }
    if (adds) {
      EXPECT_GT(Coverage(merged, users), Coverage(event, users));
    } else {
      EXPECT_EQ(Coverage(merged, users), Coverage(event, users));
    }
  }
}

TEST(Coverage, Examples) {
  ClusterAssignment a;
  a.Set("x", Label::kMajority, Provenance::kEventNetwork);
  a.Set("y", Label::kMinority, Provenance::kEventNetwork);
  a.Set("z", Label::kIntermediate, Provenance::kFallbackNetwork);
  const std::vector<std::string> all = {"x", "y", "z"};
  const std::vector<std::string> none = {"p", "q"};
  const std::vector<std::string> most = {"x", "y", "z", "w"};
  EXPECT_DOUBLE_EQ(Coverage(a, all), 1.0);
  EXPECT_DOUBLE_EQ(Coverage(a, none), 0.0);
  EXPECT_DOUBLE_EQ(Coverage(a, most), 0.75);
  EXPECT_THROW(Coverage(a, std::vector<std::string>{}), Error);
}

TEST(Boundaries, RoundTripAndValidation) {
  const BoundarySpec spec{Square("left", 0, 0, 3, 3),
                          {"right", RegionShape::kPolyline, {{5, 10}, {4.5, 0}, {5, -10}}}};
  std::ostringstream out;
  WriteBoundaries(spec, out);
  std::istringstream in("# drawn by hand\n" + out.str());
  const BoundarySpec back = ReadBoundaries(in);
  EXPECT_EQ(back.first.name, "left");
  EXPECT_EQ(back.second.shape, RegionShape::kPolyline);
  EXPECT_EQ(back.second.vertices, spec.second.vertices);

  std::istringstream overlapping(
      "region a polygon\n0,0\n4,0\n4,4\n0,4\nregion b polygon\n2,2\n6,2\n6,6\n2,6\n");
  EXPECT_THROW(ReadBoundaries(overlapping), Error);
  std::istringstream nested(
      "region a polygon\n0,0\n10,0\n10,10\n0,10\nregion b polygon\n2,2\n3,2\n3,3\n2,3\n");
  EXPECT_THROW(ReadBoundaries(nested), Error);
  std::istringstream one("region a polygon\n0,0\n1,0\n1,1\n");
  EXPECT_THROW(ReadBoundaries(one), Error);
  std::istringstream crossing(
      "region a polygon\n0,0\n2,2\n2,0\n0,2\nregion b polygon\n5,5\n6,5\n6,6\n");
  EXPECT_THROW(ReadBoundaries(crossing), Error);
}

TEST(AssignmentCsv, RoundTrip) {
  ClusterAssignment a;
  a.Set("1", Label::kMajority, Provenance::kEventNetwork);
  a.Set("2", Label::kUnclassified, Provenance::kNone);
  a.Set("3", Label::kIntermediate, Provenance::kFallbackNetwork);
  std::ostringstream out;
  WriteAssignmentCsv(a, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "user_id,label,provenance");
  std::istringstream in(out.str());
  EXPECT_EQ(ReadAssignmentCsv(in), a);
}

TEST(ReferenceBoundaries, SeparateWellSpreadGroups) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::pair<std::string, Vec2>> points;
  std::map<std::string, Label> reference;
  const Vec2 centres[3] = {{-10, 0}, {10, 2}, {0, 8}};
  for (int i = 0; i < 300; ++i) {
    const int g = i % 3;
    const std::string id = "u" + std::to_string(i);
    points.push_back({id, {centres[g].x + noise(rng), centres[g].y + noise(rng)}});
    reference[id] = static_cast<Label>(g);
  }
  const LayoutEmbedding e = Embedding(points);
  const BoundarySpec spec = BoundariesFromReference(e, reference);
  EXPECT_NO_THROW(ValidateBoundaries(spec));
  const AssignmentResult r = AssignClusters(e, spec);
  int correct = 0;
  for (const auto& [id, label] : reference) correct += r.assignment.LabelOf(id) == label;
  EXPECT_GE(correct, 297);
  const BoundarySpec suggested = SuggestBoundaries(e);
  EXPECT_NO_THROW(ValidateBoundaries(suggested));
}

TEST(ReferenceBoundaries, NeedTwoPointsPerPole) {
  const LayoutEmbedding e = Embedding({{"a", {0, 0}}, {"b", {1, 0}}, {"c", {5, 5}}});
  const std::map<std::string, Label> reference = {
      {"a", Label::kMajority}, {"b", Label::kMajority}, {"c", Label::kMinority}};
  EXPECT_THROW(BoundariesFromReference(e, reference), Error);
}

}  // namespace
}  // namespace debatenet::classify
