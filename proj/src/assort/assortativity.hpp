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


#ifndef DEBATENET_ASSORT_ASSORTATIVITY_HPP_
#define DEBATENET_ASSORT_ASSORTATIVITY_HPP_

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "classify/clusters.hpp"
#include "graph/interaction_graph.hpp"

namespace debatenet::assort {

inline constexpr int kGroups = classify::kKnownLabels;

using GroupMatrix = std::array<std::array<double, kGroups>, kGroups>;

// Per-node group index in [0, kGroups), or -1 for Unclassified / absent.
std::vector<int> NodeGroups(const graph::InteractionGraph& graph,
                            const classify::ClusterAssignment& assignment);

struct MixingMatrix {
  GroupMatrix e{};
  std::array<double, kGroups> a{};  // row (source) marginals
  std::array<double, kGroups> b{};  // column (target) marginals
  double labeled_mass = 0.0;        // before normalisation

  double SumAB() const;
};

// Edge mass between labeled endpoints, normalised to 1. By default every
// directed edge counts once regardless of its reply multiplicity.
MixingMatrix GlobalMixing(const graph::InteractionGraph& graph,
                          std::span<const int> groups, bool weighted = false);

struct GlobalResult {
  double r = 0.0;
  bool single_group = false;  // Q_max == 0; r reported as 1
  MixingMatrix mixing;
};

// Throws Error(kData) when no edge joins two labeled nodes.
GlobalResult GlobalAssortativity(const graph::InteractionGraph& graph,
                                 std::span<const int> groups,
                                 bool weighted = false);
GlobalResult GlobalAssortativity(const graph::InteractionGraph& graph,
                                 const classify::ClusterAssignment& assignment,
                                 bool weighted = false);

enum class WalkGraph { kUndirected, kDirected };

struct PprOptions {
  double damping = 0.85;
  double tolerance = 1e-12;
  int max_iterations = 100000;
  WalkGraph walk = WalkGraph::kUndirected;
  bool weighted = false;  // use reply multiplicities as edge weights
};

void ValidatePprOptions(const PprOptions& options);

// Random-walk operator over the walk graph in CSR form. Rows are the
// transition probabilities; nodes without outgoing transitions are dangling
// and send their mass back to the focal node.
class WalkOperator {
 public:
  WalkOperator(const graph::InteractionGraph& graph, WalkGraph walk,
               bool weighted);

  size_t size() const { return offsets_.size() - 1; }
  bool dangling(size_t node) const { return offsets_[node] == offsets_[node + 1]; }

  // Power iteration on w = a(wP + dangling mass at l) + (1 - a) delta_l.
  // Throws Error(kConvergence) carrying the last L1 residual.
  std::vector<double> Personalized(graph::NodeIndex focal,
                                   const PprOptions& options) const;

  // Solves Y = B + a P Y by Jacobi sweeps, each row of P applied to the
  // previous iterate. Row-parallel, so the result is independent of the
  // worker count.
  std::vector<double> SolveRight(std::span<const double> b, size_t columns,
                                 double damping, double tolerance,
                                 int max_iterations, int threads) const;

 private:
  std::vector<size_t> offsets_;
  std::vector<graph::NodeIndex> targets_;
  std::vector<double> probs_;
};

std::vector<double> PersonalizedPageRank(const graph::InteractionGraph& graph,
                                         graph::NodeIndex focal,
                                         const PprOptions& options = {});

struct LocalMixing {
  GroupMatrix e{};  // renormalised to 1 unless z == 0
  double z = 0.0;   // labeled mass before renormalisation
};

// e_gh(l) = sum over labeled i in g, labeled j in h of w(i) A_ij / k_i, with
// k_i the full out-degree of i (edges to unlabeled nodes included).
LocalMixing ComputeLocalMixing(const graph::InteractionGraph& graph,
                               std::span<const int> groups,
                               std::span<const double> w,
                               bool weighted = false);

// (sum_g e_gg - sum_g a_g b_g) / Q_max with global marginals. Returns 1 when
// Q_max is zero.
double LocalR(const GroupMatrix& e, const MixingMatrix& global);

struct LocalResult {
  double r = 0.0;
  double z = 0.0;
  bool flagged = false;  // z == 0, excluded from histograms
};

LocalResult LocalAssortativity(const graph::InteractionGraph& graph,
                               std::span<const int> groups,
                               graph::NodeIndex focal,
                               const PprOptions& options = {});

struct ProfileEntry {
  std::string user;
  classify::Label label = classify::Label::kUnclassified;
  double r = 0.0;
  double z = 0.0;
  bool flagged = false;
};

struct AssortativityProfile {
  std::vector<ProfileEntry> entries;  // ordered by user id
  PprOptions options;
  GlobalResult global;
  std::vector<std::string> warnings;
};

// Local assortativity of every node in the graph, all focal nodes solved
// together.
AssortativityProfile ComputeProfile(
    const graph::InteractionGraph& graph,
    const classify::ClusterAssignment& assignment,
    const PprOptions& options = {}, int threads = 1);

// Mean r weighted by z over unflagged entries carrying `label`. NaN if none.
double WeightedMeanR(const AssortativityProfile& profile,
                     classify::Label label);

struct Histogram {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<std::array<double, 4>> mass;  // majority, minority, intermediate, all
  double clamped_mass = 0.0;                // r below lo folded into bin 0

  size_t bins() const { return mass.size(); }
  double edge(size_t k) const;
};

// Each unflagged node adds z to the bin holding r; bins are [lo, hi) except
// the last, which is closed.
Histogram AssortHistogram(const AssortativityProfile& profile,
                          size_t bins = 40);

// user_id,label,r_local,z_weight. Flagged nodes have empty r_local.
void WriteProfileCsv(const AssortativityProfile& profile, std::ostream& out);
// bin_lo,bin_hi,mass_majority,mass_minority,mass_intermediate,mass_all
void WriteHistogramCsv(const Histogram& histogram, std::ostream& out);

}  // namespace debatenet::assort

#endif  // DEBATENET_ASSORT_ASSORTATIVITY_HPP_
