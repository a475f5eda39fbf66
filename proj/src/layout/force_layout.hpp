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

#ifndef DEBATENET_LAYOUT_FORCE_LAYOUT_HPP_
#define DEBATENET_LAYOUT_FORCE_LAYOUT_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "graph/interaction_graph.hpp"

namespace debatenet::layout {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

enum class RepulsionMethod { kAuto, kExact, kBarnesHut };

struct LayoutParams {
  double repulsion = 2.0;  // k_r
  double gravity = 1.0;    // k_g, pulls toward the origin
  int iterations = 1000;
  double jitter_tolerance = 1.0;
  bool linlog = false;
  // Exponent applied to edge weights in the attraction term (0 or 1).
  double edge_weight_influence = 1.0;
  double theta = 1.2;  // Barnes-Hut opening criterion
  RepulsionMethod repulsion_method = RepulsionMethod::kAuto;
  // kAuto switches to Barnes-Hut above this many nodes.
  size_t barnes_hut_threshold = 2000;
  int threads = 1;
  // Side of the seeded initial square; 0 picks 10 * sqrt(n).
  double initial_extent = 0.0;
  // Records the energy proxy after every iteration (O(n^2) per step).
  bool track_energy = false;
};

// Throws Error(kInvalidArgument) on out-of-range parameters.
void ValidateLayoutParams(const LayoutParams& params);

struct LayoutEmbedding {
  std::vector<std::string> ids;
  std::vector<Vec2> positions;
  int iterations = 0;
  double mean_displacement = 0.0;
  std::uint64_t seed = 0;
  LayoutParams params;
  std::vector<double> energy;

  std::optional<Vec2> Find(const std::string& id) const;
  std::map<std::string, Vec2> AsMap() const;
};

// Force-directed spatialization on the undirected projection of `graph`:
// linear attraction along edges (scaled by weight^delta), repulsion
// k_r (deg+1)(deg'+1) / d between all pairs, gravity k_g (deg+1) toward the
// origin, adaptive global speed with per-node swing damping. Deterministic for
// fixed inputs and independent of params.threads. Throws Error(kNumeric)
// naming the iteration if positions become non-finite.
LayoutEmbedding Spatialize(const graph::InteractionGraph& graph,
                           const LayoutParams& params, std::uint64_t seed);

// Same, starting from explicit positions (one per node, in node order).
LayoutEmbedding SpatializeFrom(const graph::InteractionGraph& graph,
                               const LayoutParams& params, std::uint64_t seed,
                               std::vector<Vec2> initial);

// Repulsion forces for nodes with the given undirected degrees.
std::vector<Vec2> RepulsionExact(std::span<const Vec2> positions,
                                 std::span<const std::uint32_t> degrees,
                                 double repulsion, int threads = 1);
std::vector<Vec2> RepulsionBarnesHut(std::span<const Vec2> positions,
                                     std::span<const std::uint32_t> degrees,
                                     double repulsion, double theta,
                                     int threads = 1);

// Potential whose negative gradient is the layout force field.
double LayoutEnergy(const graph::InteractionGraph& graph,
                    std::span<const Vec2> positions,
                    const LayoutParams& params);

// CSV node_id,x,y.
void WriteEmbeddingCsv(const LayoutEmbedding& embedding, std::ostream& out);
LayoutEmbedding ReadEmbeddingCsv(std::istream& in);

}  // namespace debatenet::layout

#endif  // DEBATENET_LAYOUT_FORCE_LAYOUT_HPP_
