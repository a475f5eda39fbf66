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


#ifndef DEBATENET_STATS_TABLES_HPP_
#define DEBATENET_STATS_TABLES_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "classify/clusters.hpp"
#include "forest/reply_forest.hpp"
#include "graph/interaction_graph.hpp"
#include "ingest/record.hpp"

namespace debatenet::stats {

inline constexpr int kAllLabels = 4;  // three known labels plus Unclassified

struct EngagementRow {
  std::uint64_t users = 0;
  double user_share = 0.0;
  std::uint64_t replies = 0;
  double reply_share = 0.0;
};

struct EngagementTable {
  std::array<EngagementRow, kAllLabels> rows;  // indexed by classify::Label
  std::uint64_t total_users = 0;
  std::uint64_t total_replies = 0;

  const EngagementRow& row(classify::Label label) const {
    return rows[static_cast<size_t>(label)];
  }
};

// Distinct reply authors and reply tweets per label; roots are not replies.
// `max_depth` of 1 restricts to first-order replies.
EngagementTable ComputeEngagement(const forest::ReplyForest& forest,
                                  const classify::ClusterAssignment& assignment,
                                  std::uint32_t max_depth = UINT32_MAX);
EngagementTable FirstOrderTable(const forest::ReplyForest& forest,
                                const classify::ClusterAssignment& assignment);

// Authors of at least one reply.
std::set<std::string> ReplyUsers(const forest::ReplyForest& forest);

struct ParticipationRow {
  std::uint64_t active = 0;
  std::uint64_t base = 0;
  double share = 0.0;
  bool defined = false;  // false when the base is empty
};

struct Participation {
  std::array<ParticipationRow, classify::kKnownLabels> rows;

  const ParticipationRow& row(classify::Label label) const {
    return rows[static_cast<size_t>(label)];
  }
};

// share = |members in label, replying, not seeds| / |members not seeds|, with
// members taken from the retweet-network classification.
Participation ParticipationShare(const classify::ClusterAssignment& retweet,
                                 const std::set<std::string>& reply_users,
                                 const ingest::SeedSet& seeds);

struct TestResult {
  double statistic = 0.0;
  int df = 0;  // chi-square only
  double p_value = 1.0;
  std::vector<std::uint64_t> sample_sizes;
};

// Pearson chi-square of independence with expected counts from the margins.
// Throws Error(kData) if any row or column total is zero.
TestResult ChiSquare(const std::vector<std::vector<double>>& table);

// Pooled two-proportion z with a two-sided normal p-value. Throws
// Error(kInvalidArgument) for k > n or n == 0 and Error(kData) when the pooled
// proportion is 0 or 1.
TestResult TwoProportionZ(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2,
                          std::uint64_t n2);

struct ParticipationTests {
  std::optional<TestResult> chi_square;  // labels x {active, inactive}
  std::vector<classify::Label> chi_labels;
  struct Pair {
    classify::Label first;
    classify::Label second;
    TestResult z;
  };
  std::vector<Pair> pairwise;
};

// Chi-square over labels with a defined base plus pairwise z-tests between
// them. Degenerate comparisons are left out.
ParticipationTests TestParticipation(const Participation& participation);

struct InteractionMatrix {
  // counts[from][to] over the known labels.
  std::array<std::array<std::uint64_t, classify::kKnownLabels>,
             classify::kKnownLabels>
      counts{};
  // All replies sent by each group, including those to Unclassified authors.
  std::array<std::uint64_t, classify::kKnownLabels> from_total{};

  double share(classify::Label from, classify::Label to) const;
};

// One entry per reply tweet, self-replies included on the diagonal.
InteractionMatrix ComputeInteractionMatrix(
    const forest::ReplyForest& forest,
    const classify::ClusterAssignment& assignment);
// From an aggregated reply network; edge weights are reply counts.
InteractionMatrix ComputeInteractionMatrix(
    const graph::InteractionGraph& reply_network,
    const classify::ClusterAssignment& assignment);

void WriteEngagementCsv(const EngagementTable& table, std::ostream& out);
void WriteParticipationCsv(const Participation& participation,
                           std::ostream& out);
void WriteTestsCsv(const ParticipationTests& tests, std::ostream& out);
void WriteInteractionCsv(const InteractionMatrix& matrix, std::ostream& out);

}  // namespace debatenet::stats

#endif  // DEBATENET_STATS_TABLES_HPP_
