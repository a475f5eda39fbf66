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

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/parallel.hpp"

namespace debatenet::assort {

using classify::Label;
using graph::InteractionGraph;
using graph::NodeIndex;

std::vector<int> NodeGroups(const InteractionGraph& graph,
                            const classify::ClusterAssignment& assignment) {
  std::vector<int> groups(graph.node_count(), -1);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    const Label label = assignment.LabelOf(graph.id(v));
    if (label != Label::kUnclassified) groups[v] = static_cast<int>(label);
  }
  return groups;
}

double MixingMatrix::SumAB() const {
  double sum = 0.0;
  for (int g = 0; g < kGroups; ++g) sum += a[g] * b[g];
  return sum;
}

namespace {

void CheckGroups(const InteractionGraph& graph, std::span<const int> groups) {
  if (groups.size() != graph.node_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} group entries for {} nodes", groups.size(),
                            graph.node_count()));
  }
  for (int g : groups) {
    if (g < -1 || g >= kGroups) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("group index {} out of range", g));
    }
  }
}

}  // namespace

MixingMatrix GlobalMixing(const InteractionGraph& graph,
                          std::span<const int> groups, bool weighted) {
  CheckGroups(graph, groups);
  MixingMatrix m;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (groups[u] < 0) continue;
    for (const auto& [v, weight] : graph.out_edges(u)) {
      if (groups[v] < 0) continue;
      const double mass = weighted ? static_cast<double>(weight) : 1.0;
      m.e[groups[u]][groups[v]] += mass;
      m.labeled_mass += mass;
    }
  }
  if (m.labeled_mass > 0.0) {
    for (int g = 0; g < kGroups; ++g) {
      for (int h = 0; h < kGroups; ++h) {
        m.e[g][h] /= m.labeled_mass;
        m.a[g] += m.e[g][h];
        m.b[h] += m.e[g][h];
      }
    }
  }
  return m;
}

GlobalResult GlobalAssortativity(const InteractionGraph& graph,
                                 std::span<const int> groups, bool weighted) {
  GlobalResult result;
  result.mixing = GlobalMixing(graph, groups, weighted);
  if (result.mixing.labeled_mass == 0.0) {
    throw Error(ErrorCode::kData,
                "assortativity: no edge joins two labeled nodes");
  }
  double trace = 0.0;
  for (int g = 0; g < kGroups; ++g) trace += result.mixing.e[g][g];
  const double q_max = 1.0 - result.mixing.SumAB();
  if (q_max <= 0.0) {
    result.single_group = true;
    result.r = 1.0;
  } else {
    result.r = (trace - result.mixing.SumAB()) / q_max;
  }
  return result;
}

GlobalResult GlobalAssortativity(const InteractionGraph& graph,
                                 const classify::ClusterAssignment& assignment,
                                 bool weighted) {
  return GlobalAssortativity(graph, NodeGroups(graph, assignment), weighted);
}

void ValidatePprOptions(const PprOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("damping must lie in (0, 1), got {}",
                            options.damping));
  }
  if (!(options.tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  if (options.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  }
}

WalkOperator::WalkOperator(const InteractionGraph& graph, WalkGraph walk,
                           bool weighted) {
  const size_t n = graph.node_count();
  offsets_.assign(1, 0);
  offsets_.reserve(n + 1);
  graph::Adjacency row;
  for (NodeIndex u = 0; u < n; ++u) {
    row.clear();
    for (const auto& [v, weight] : graph.out_edges(u)) row[v] += weight;
    if (walk == WalkGraph::kUndirected) {
      for (const auto& [v, weight] : graph.in_edges(u)) row[v] += weight;
    }
    double total = 0.0;
    for (const auto& [v, weight] : row) {
      total += weighted ? static_cast<double>(weight) : 1.0;
    }
    for (const auto& [v, weight] : row) {
      targets_.push_back(v);
      probs_.push_back((weighted ? static_cast<double>(weight) : 1.0) / total);
    }
    offsets_.push_back(targets_.size());
  }
}

std::vector<double> WalkOperator::Personalized(NodeIndex focal,
                                               const PprOptions& options) const {
  ValidatePprOptions(options);
  const size_t n = size();
  if (focal >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("focal node {} outside graph of {} nodes", focal, n));
  }
  const double alpha = options.damping;
  std::vector<double> w(n, 0.0);
  std::vector<double> next(n);
  w[focal] = 1.0;
  double residual = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    next[focal] = 1.0 - alpha;
    for (size_t i = 0; i < n; ++i) {
      if (w[i] == 0.0) continue;
      if (dangling(i)) {
        next[focal] += alpha * w[i];
        continue;
      }
      const double push = alpha * w[i];
      for (size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
        next[targets_[k]] += push * probs_[k];
      }
    }
    residual = 0.0;
    for (size_t i = 0; i < n; ++i) residual += std::abs(next[i] - w[i]);
    w.swap(next);
    if (residual < options.tolerance) return w;
  }
  throw Error(ErrorCode::kConvergence,
              fmt::format("personalized pagerank did not converge in {} "
                          "iterations (L1 residual {:.3e})",
                          options.max_iterations, residual));
}

std::vector<double> WalkOperator::SolveRight(std::span<const double> b,
                                             size_t columns, double damping,
                                             double tolerance,
                                             int max_iterations,
                                             int threads) const {
  const size_t n = size();
  if (b.size() != n * columns) {
    throw Error(ErrorCode::kInvalidArgument, "right-hand side has wrong shape");
  }
  std::vector<double> y(b.begin(), b.end());
  std::vector<double> next(y.size());
  const size_t workers = static_cast<size_t>(std::max(threads, 1));
  std::vector<double> chunk_residual;
  double residual = 0.0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    chunk_residual.assign(n, 0.0);
    ParallelFor(n, static_cast<int>(workers), [&](size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) {
        double* out = &next[i * columns];
        const double* rhs = &b[i * columns];
        for (size_t c = 0; c < columns; ++c) out[c] = 0.0;
        for (size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
          const double* src = &y[targets_[k] * columns];
          const double p = probs_[k];
          for (size_t c = 0; c < columns; ++c) out[c] += p * src[c];
        }
        double delta = 0.0;
        for (size_t c = 0; c < columns; ++c) {
          out[c] = rhs[c] + damping * out[c];
          delta += std::abs(out[c] - y[i * columns + c]);
        }
        chunk_residual[i] = delta;
      }
    });
    residual = *std::max_element(chunk_residual.begin(), chunk_residual.end());
    y.swap(next);
    if (residual < tolerance) return y;
  }
  throw Error(ErrorCode::kConvergence,
              fmt::format("walk solve did not converge in {} iterations "
                          "(residual {:.3e})",
                          max_iterations, residual));
}

std::vector<double> PersonalizedPageRank(const InteractionGraph& graph,
                                         NodeIndex focal,
                                         const PprOptions& options) {
  if (graph.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "pagerank on an empty graph");
  }
  return WalkOperator(graph, options.walk, options.weighted)
      .Personalized(focal, options);
}

namespace {

double OutDegree(const InteractionGraph& graph, NodeIndex i, bool weighted) {
  return weighted ? static_cast<double>(graph.out_strength(i))
                  : static_cast<double>(graph.out_edges(i).size());
}

}  // namespace

LocalMixing ComputeLocalMixing(const InteractionGraph& graph,
                               std::span<const int> groups,
                               std::span<const double> w, bool weighted) {
  CheckGroups(graph, groups);
  if (w.size() != graph.node_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "weight vector does not match the graph");
  }
  LocalMixing m;
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    if (groups[i] < 0 || w[i] == 0.0 || graph.out_edges(i).empty()) continue;
    const double scale = w[i] / OutDegree(graph, i, weighted);
    for (const auto& [j, weight] : graph.out_edges(i)) {
      if (groups[j] < 0) continue;
      m.e[groups[i]][groups[j]] +=
          scale * (weighted ? static_cast<double>(weight) : 1.0);
    }
  }
  for (const auto& row : m.e) {
    for (double v : row) m.z += v;
  }
  if (m.z > 0.0) {
    for (auto& row : m.e) {
      for (double& v : row) v /= m.z;
    }
  }
  return m;
}

double LocalR(const GroupMatrix& e, const MixingMatrix& global) {
  const double sum_ab = global.SumAB();
  const double q_max = 1.0 - sum_ab;
  if (q_max <= 0.0) return 1.0;
  double trace = 0.0;
  for (int g = 0; g < kGroups; ++g) trace += e[g][g];
  return (trace - sum_ab) / q_max;
}

LocalResult LocalAssortativity(const InteractionGraph& graph,
                               std::span<const int> groups, NodeIndex focal,
                               const PprOptions& options) {
  const GlobalResult global =
      GlobalAssortativity(graph, groups, options.weighted);
  const std::vector<double> w = PersonalizedPageRank(graph, focal, options);
  const LocalMixing mixing =
      ComputeLocalMixing(graph, groups, w, options.weighted);
  LocalResult result;
  result.z = mixing.z;
  if (mixing.z == 0.0) {
    result.flagged = true;
    result.r = std::numeric_limits<double>::quiet_NaN();
  } else {
    result.r = LocalR(mixing.e, global.mixing);
  }
  return result;
}

AssortativityProfile ComputeProfile(
    const InteractionGraph& graph,
    const classify::ClusterAssignment& assignment, const PprOptions& options,
    int threads) {
  ValidatePprOptions(options);
  const std::vector<int> groups = NodeGroups(graph, assignment);
  AssortativityProfile profile;
  profile.options = options;
  profile.global = GlobalAssortativity(graph, groups, options.weighted);
  if (profile.global.single_group) {
    profile.warnings.push_back(
        "only one label group carries edges; Q_max is zero and every r is 1");
  }

  // Row i of the right-hand side holds node i's contribution to each e_gh
  // followed by a constant 1 for normalisation. Solving Y = B + aPY gives,
  // for focal l, Y_l = M_l B with M = (I - aP)^-1, whose normalised row is
  // the pagerank vector of l.
  constexpr size_t kCells = kGroups * kGroups;
  constexpr size_t kColumns = kCells + 1;
  const size_t n = graph.node_count();
  std::vector<double> rhs(n * kColumns, 0.0);
  for (NodeIndex i = 0; i < n; ++i) {
    rhs[i * kColumns + kCells] = 1.0;
    if (groups[i] < 0 || graph.out_edges(i).empty()) continue;
    const double k = OutDegree(graph, i, options.weighted);
    for (const auto& [j, weight] : graph.out_edges(i)) {
      if (groups[j] < 0) continue;
      rhs[i * kColumns + groups[i] * kGroups + groups[j]] +=
          (options.weighted ? static_cast<double>(weight) : 1.0) / k;
    }
  }
  const WalkOperator op(graph, options.walk, options.weighted);
  const std::vector<double> y =
      op.SolveRight(rhs, kColumns, options.damping, options.tolerance,
                    options.max_iterations, threads);

  std::vector<NodeIndex> order(n);
  for (NodeIndex v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    return graph.id(a) < graph.id(b);
  });
  profile.entries.reserve(n);
  for (NodeIndex l : order) {
    ProfileEntry entry;
    entry.user = graph.id(l);
    entry.label = groups[l] < 0 ? Label::kUnclassified
                                : static_cast<Label>(groups[l]);
    const double* row = &y[l * kColumns];
    GroupMatrix e{};
    double z = 0.0;
    for (int g = 0; g < kGroups; ++g) {
      for (int h = 0; h < kGroups; ++h) {
        e[g][h] = row[g * kGroups + h] / row[kCells];
        z += e[g][h];
      }
    }
    entry.z = std::min(z, 1.0);
    if (z <= 0.0) {
      entry.flagged = true;
      entry.z = 0.0;
      entry.r = std::numeric_limits<double>::quiet_NaN();
    } else {
      for (auto& r : e) {
        for (double& v : r) v /= z;
      }
      entry.r = LocalR(e, profile.global.mixing);
    }
    profile.entries.push_back(std::move(entry));
  }
  return profile;
}

double WeightedMeanR(const AssortativityProfile& profile, Label label) {
  double num = 0.0;
  double den = 0.0;
  for (const ProfileEntry& e : profile.entries) {
    if (e.flagged || e.label != label) continue;
    num += e.z * e.r;
    den += e.z;
  }
  return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

double Histogram::edge(size_t k) const {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins());
}

Histogram AssortHistogram(const AssortativityProfile& profile, size_t bins) {
  if (bins == 0) {
    throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  }
  Histogram h;
  h.mass.assign(bins, {0.0, 0.0, 0.0, 0.0});
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (const ProfileEntry& e : profile.entries) {
    if (e.flagged) continue;
    size_t k = 0;
    if (e.r < h.lo) {
      h.clamped_mass += e.z;
    } else {
      k = std::min(bins - 1, static_cast<size_t>((e.r - h.lo) / width));
    }
    if (e.label != Label::kUnclassified) {
      h.mass[k][static_cast<size_t>(e.label)] += e.z;
    }
    h.mass[k][3] += e.z;
  }
  return h;
}

void WriteProfileCsv(const AssortativityProfile& profile, std::ostream& out) {
  out << "user_id,label,r_local,z_weight\n";
  for (const ProfileEntry& e : profile.entries) {
    out << CsvEscape(e.user) << ',' << classify::LabelName(e.label) << ','
        << (e.flagged ? std::string() : FormatDouble(e.r)) << ','
        << FormatDouble(e.z) << '\n';
  }
}

void WriteHistogramCsv(const Histogram& histogram, std::ostream& out) {
  out << "bin_lo,bin_hi,mass_majority,mass_minority,mass_intermediate,"
         "mass_all\n";
  for (size_t k = 0; k < histogram.bins(); ++k) {
    out << FormatDouble(histogram.edge(k)) << ','
        << FormatDouble(histogram.edge(k + 1));
    for (double m : histogram.mass[k]) out << ',' << FormatDouble(m);
    out << '\n';
  }
}

}  // namespace debatenet::assort
