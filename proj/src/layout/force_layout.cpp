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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/random.hpp"
#include "layout/barnes_hut.hpp"

namespace debatenet::layout {
namespace {

// Undirected projection: per node, neighbours in increasing index order with
// the combined weight of both directions raised to the influence exponent.
struct Neighbourhood {
  std::vector<std::vector<std::pair<graph::NodeIndex, double>>> adjacency;
  std::vector<std::uint32_t> degree;
  std::vector<double> mass;
};

Neighbourhood Project(const graph::InteractionGraph& graph, double delta) {
  const size_t n = graph.node_count();
  Neighbourhood hood;
  hood.adjacency.resize(n);
  hood.degree.resize(n);
  hood.mass.resize(n);
  for (graph::NodeIndex u = 0; u < n; ++u) {
    std::map<graph::NodeIndex, graph::Weight> combined;
    for (const auto& [v, w] : graph.out_edges(u)) combined[v] += w;
    for (const auto& [v, w] : graph.in_edges(u)) combined[v] += w;
    auto& row = hood.adjacency[u];
    row.reserve(combined.size());
    for (const auto& [v, w] : combined) {
      const double weight =
          delta == 1.0   ? static_cast<double>(w)
          : delta == 0.0 ? 1.0
                         : std::pow(static_cast<double>(w), delta);
      row.emplace_back(v, weight);
    }
    hood.degree[u] = static_cast<std::uint32_t>(combined.size());
    hood.mass[u] = 1.0 + combined.size();
  }
  return hood;
}

std::vector<double> MassesFromDegrees(std::span<const std::uint32_t> degrees) {
  std::vector<double> mass(degrees.size());
  for (size_t i = 0; i < degrees.size(); ++i) mass[i] = 1.0 + degrees[i];
  return mass;
}

void ExactRepulsionRange(std::span<const Vec2> pos, std::span<const double> mass,
                         double repulsion, size_t begin, size_t end,
                         std::vector<Vec2>& out) {
  for (size_t i = begin; i < end; ++i) {
    Vec2 f;
    const double coeff = repulsion * mass[i];
    for (size_t j = 0; j < pos.size(); ++j) {
      if (j == i) continue;
      const double dx = pos[i].x - pos[j].x;
      const double dy = pos[i].y - pos[j].y;
      const double d2 = dx * dx + dy * dy;
      if (d2 > 0.0) {
        const double s = coeff * mass[j] / d2;
        f.x += dx * s;
        f.y += dy * s;
      }
    }
    out[i] = f;
  }
}

// Separates exactly coincident points with tiny seeded offsets.
void JitterCoincident(std::vector<Vec2>& pos, Rng& rng) {
  if (pos.size() < 2) return;
  std::vector<size_t> order(pos.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (pos[a].x != pos[b].x) return pos[a].x < pos[b].x;
    if (pos[a].y != pos[b].y) return pos[a].y < pos[b].y;
    return a < b;
  });
  for (size_t k = 1; k < order.size(); ++k) {
    const Vec2& prev = pos[order[k - 1]];
    Vec2& cur = pos[order[k]];
    if (cur.x == prev.x && cur.y == prev.y) {
      const double scale = 1e-6 * std::max(1.0, std::abs(cur.x) + std::abs(cur.y));
      cur.x += scale * rng.Uniform(-1.0, 1.0);
      cur.y += scale * rng.Uniform(-1.0, 1.0);
    }
  }
}

bool UseBarnesHut(const LayoutParams& params, size_t n) {
  switch (params.repulsion_method) {
    case RepulsionMethod::kExact:
      return false;
    case RepulsionMethod::kBarnesHut:
      return true;
    case RepulsionMethod::kAuto:
      return n > params.barnes_hut_threshold;
  }
  return false;
}

double EnergyOf(const Neighbourhood& hood, std::span<const Vec2> pos,
                const LayoutParams& params) {
  double energy = 0.0;
  const size_t n = pos.size();
  for (size_t u = 0; u < n; ++u) {
    for (const auto& [v, w] : hood.adjacency[u]) {
      if (v <= u) continue;
      const double d = std::hypot(pos[u].x - pos[v].x, pos[u].y - pos[v].y);
      energy += params.linlog ? w * ((1.0 + d) * std::log1p(d) - d)
                              : 0.5 * w * d * d;
    }
    energy += params.gravity * hood.mass[u] * std::hypot(pos[u].x, pos[u].y);
    for (size_t v = u + 1; v < n; ++v) {
      const double d = std::hypot(pos[u].x - pos[v].x, pos[u].y - pos[v].y);
      if (d > 0.0) {
        energy -= params.repulsion * hood.mass[u] * hood.mass[v] * std::log(d);
      }
    }
  }
  return energy;
}

}  // namespace

void ValidateLayoutParams(const LayoutParams& params) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "layout: " + what);
  };
  if (!(params.repulsion > 0.0)) fail("repulsion must be positive");
  if (!(params.gravity >= 0.0)) fail("gravity must be non-negative");
  if (params.iterations < 1) fail("iterations must be at least 1");
  if (!(params.jitter_tolerance > 0.0)) fail("jitter_tolerance must be positive");
  if (params.edge_weight_influence != 0.0 && params.edge_weight_influence != 1.0) {
    fail("edge_weight_influence must be 0 or 1");
  }
  if (!(params.theta > 0.0)) fail("theta must be positive");
  if (params.threads < 1) fail("threads must be at least 1");
  if (!(params.initial_extent >= 0.0)) fail("initial_extent must be non-negative");
  if (params.barnes_hut_threshold > 5000) {
    fail("barnes_hut_threshold may not exceed 5000 nodes");
  }
}

std::optional<Vec2> LayoutEmbedding::Find(const std::string& id) const {
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return positions[i];
  }
  return std::nullopt;
}

std::map<std::string, Vec2> LayoutEmbedding::AsMap() const {
  std::map<std::string, Vec2> out;
  for (size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], positions[i]);
  return out;
}

std::vector<Vec2> RepulsionExact(std::span<const Vec2> positions,
                                 std::span<const std::uint32_t> degrees,
                                 double repulsion, int threads) {
  const std::vector<double> mass = MassesFromDegrees(degrees);
  std::vector<Vec2> out(positions.size());
  ParallelFor(positions.size(), threads, [&](size_t begin, size_t end) {
    ExactRepulsionRange(positions, mass, repulsion, begin, end, out);
  });
  return out;
}

std::vector<Vec2> RepulsionBarnesHut(std::span<const Vec2> positions,
                                     std::span<const std::uint32_t> degrees,
                                     double repulsion, double theta,
                                     int threads) {
  const std::vector<double> mass = MassesFromDegrees(degrees);
  const QuadTree tree(positions, mass);
  std::vector<Vec2> out(positions.size());
  ParallelFor(positions.size(), threads, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) out[i] = tree.Force(i, repulsion, theta);
  });
  return out;
}

double LayoutEnergy(const graph::InteractionGraph& graph,
                    std::span<const Vec2> positions,
                    const LayoutParams& params) {
  return EnergyOf(Project(graph, params.edge_weight_influence), positions,
                  params);
}

LayoutEmbedding Spatialize(const graph::InteractionGraph& graph,
                           const LayoutParams& params, std::uint64_t seed) {
  const size_t n = graph.node_count();
  const double extent = params.initial_extent > 0.0
                            ? params.initial_extent
                            : 10.0 * std::sqrt(static_cast<double>(std::max<size_t>(n, 1)));
  Rng rng(seed);
  std::vector<Vec2> initial(n);
  for (Vec2& p : initial) {
    p.x = rng.Uniform(-0.5, 0.5) * extent;
    p.y = rng.Uniform(-0.5, 0.5) * extent;
  }
  return SpatializeFrom(graph, params, seed, std::move(initial));
}

LayoutEmbedding SpatializeFrom(const graph::InteractionGraph& graph,
                               const LayoutParams& params, std::uint64_t seed,
                               std::vector<Vec2> initial) {
  ValidateLayoutParams(params);
  const size_t n = graph.node_count();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "layout: empty graph");
  if (initial.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "layout: initial positions do not match the node count");
  }

  const Neighbourhood hood = Project(graph, params.edge_weight_influence);
  const bool barnes_hut = UseBarnesHut(params, n);
  Rng jitter(seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<Vec2> pos = std::move(initial);
  JitterCoincident(pos, jitter);
  std::vector<Vec2> force(n), old_force(n);

  LayoutEmbedding result;
  result.ids = graph.ids();
  result.seed = seed;
  result.params = params;

  double speed = 1.0;
  double speed_efficiency = 1.0;
  for (int iteration = 1; iteration <= params.iterations; ++iteration) {
    std::swap(force, old_force);

    std::optional<QuadTree> tree;
    if (barnes_hut) tree.emplace(pos, hood.mass);

    ParallelFor(n, params.threads, [&](size_t begin, size_t end) {
      if (!barnes_hut) ExactRepulsionRange(pos, hood.mass, params.repulsion,
                                           begin, end, force);
      for (size_t i = begin; i < end; ++i) {
        Vec2 f = barnes_hut ? tree->Force(i, params.repulsion, params.theta)
                            : force[i];
        // Gravity toward the origin.
        const double r = std::hypot(pos[i].x, pos[i].y);
        if (r > 0.0 && params.gravity > 0.0) {
          const double g = params.gravity * hood.mass[i] / r;
          f.x -= pos[i].x * g;
          f.y -= pos[i].y * g;
        }
        // Attraction along edges.
        for (const auto& [j, w] : hood.adjacency[i]) {
          const double dx = pos[j].x - pos[i].x;
          const double dy = pos[j].y - pos[i].y;
          double a = w;
          if (params.linlog) {
            const double d = std::hypot(dx, dy);
            a = d > 0.0 ? w * std::log1p(d) / d : 0.0;
          }
          f.x += dx * a;
          f.y += dy * a;
        }
        force[i] = f;
      }
    });

    double total_swinging = 0.0;
    double total_traction = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double sx = old_force[i].x - force[i].x;
      const double sy = old_force[i].y - force[i].y;
      const double tx = old_force[i].x + force[i].x;
      const double ty = old_force[i].y + force[i].y;
      total_swinging += hood.mass[i] * std::sqrt(sx * sx + sy * sy);
      total_traction += 0.5 * hood.mass[i] * std::sqrt(tx * tx + ty * ty);
    }

    const double nd = static_cast<double>(n);
    const double estimated_jt = 0.05 * std::sqrt(nd);
    const double min_jt = std::sqrt(estimated_jt);
    const double max_jt = 10.0;
    double jt = params.jitter_tolerance *
                std::max(min_jt, std::min(max_jt, estimated_jt * total_traction /
                                                      (nd * nd)));
    constexpr double kMinSpeedEfficiency = 0.05;
    if (total_traction > 0.0 && total_swinging / total_traction > 2.0) {
      if (speed_efficiency > kMinSpeedEfficiency) speed_efficiency *= 0.5;
      jt = std::max(jt, params.jitter_tolerance);
    }
    if (total_swinging > 0.0) {
      const double target_speed =
          jt * speed_efficiency * total_traction / total_swinging;
      if (total_swinging > jt * total_traction) {
        if (speed_efficiency > kMinSpeedEfficiency) speed_efficiency *= 0.7;
      } else if (speed < 1000.0) {
        speed_efficiency *= 1.3;
      }
      constexpr double kMaxRise = 0.5;
      speed = speed + std::min(target_speed - speed, kMaxRise * speed);
    }

    double displacement = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double sx = old_force[i].x - force[i].x;
      const double sy = old_force[i].y - force[i].y;
      const double swinging = hood.mass[i] * std::sqrt(sx * sx + sy * sy);
      const double factor = speed / (1.0 + std::sqrt(speed * swinging));
      const double dx = force[i].x * factor;
      const double dy = force[i].y * factor;
      pos[i].x += dx;
      pos[i].y += dy;
      displacement += std::sqrt(dx * dx + dy * dy);
      if (!std::isfinite(pos[i].x) || !std::isfinite(pos[i].y)) {
        throw Error(ErrorCode::kNumeric,
                    fmt::format("layout diverged at iteration {} (node '{}')",
                                iteration, graph.id(static_cast<graph::NodeIndex>(i))));
      }
    }
    JitterCoincident(pos, jitter);
    result.mean_displacement = displacement / nd;
    result.iterations = iteration;
    if (params.track_energy) result.energy.push_back(EnergyOf(hood, pos, params));
  }
  result.positions = std::move(pos);
  return result;
}

void WriteEmbeddingCsv(const LayoutEmbedding& embedding, std::ostream& out) {
  out << "node_id,x,y\n";
  for (size_t i = 0; i < embedding.ids.size(); ++i) {
    out << CsvEscape(embedding.ids[i]) << ','
        << FormatDouble(embedding.positions[i].x) << ','
        << FormatDouble(embedding.positions[i].y) << '\n';
  }
}

LayoutEmbedding ReadEmbeddingCsv(std::istream& in) {
  LayoutEmbedding embedding;
  std::vector<std::string> fields;
  size_t row = 0;
  std::map<std::string, size_t> seen;
  while (ReadCsvRow(in, fields)) {
    ++row;
    if (row == 1 && !fields.empty() && fields[0] == "node_id") continue;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse,
                  fmt::format("embedding row {}: expected node_id,x,y", row));
    }
    const Vec2 p{ParseDouble(fields[1]), ParseDouble(fields[2])};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kData,
                  fmt::format("embedding row {}: non-finite coordinate", row));
    }
    if (!seen.emplace(fields[0], row).second) {
      throw Error(ErrorCode::kData,
                  fmt::format("embedding row {}: duplicate node '{}'", row,
                              fields[0]));
    }
    embedding.ids.push_back(fields[0]);
    embedding.positions.push_back(p);
  }
  return embedding;
}

}  // namespace debatenet::layout
