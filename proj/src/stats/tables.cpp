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

#include "stats/tables.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"

namespace debatenet::stats {

using classify::Label;

namespace {

double Ratio(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? 0.0
                    : static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

EngagementTable ComputeEngagement(const forest::ReplyForest& forest,
                                  const classify::ClusterAssignment& assignment,
                                  std::uint32_t max_depth) {
  if (forest.trees.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "engagement of an empty forest");
  }
  std::set<std::string> authors;
  EngagementTable table;
  for (const forest::ReplyTree& tree : forest.trees) {
    for (const forest::TreeNode& node : tree.nodes) {
      if (node.depth == 0 || node.depth > max_depth) continue;
      const auto label = static_cast<size_t>(assignment.LabelOf(node.author_id));
      ++table.rows[label].replies;
      ++table.total_replies;
      if (authors.insert(node.author_id).second) {
        ++table.rows[label].users;
        ++table.total_users;
      }
    }
  }
  for (EngagementRow& row : table.rows) {
    row.user_share = Ratio(row.users, table.total_users);
    row.reply_share = Ratio(row.replies, table.total_replies);
  }
  return table;
}

EngagementTable FirstOrderTable(const forest::ReplyForest& forest,
                                const classify::ClusterAssignment& assignment) {
  return ComputeEngagement(forest, assignment, 1);
}

std::set<std::string> ReplyUsers(const forest::ReplyForest& forest) {
  std::set<std::string> users;
  for (const forest::ReplyTree& tree : forest.trees) {
    for (size_t k = 1; k < tree.nodes.size(); ++k) {
      users.insert(tree.nodes[k].author_id);
    }
  }
  return users;
}

Participation ParticipationShare(const classify::ClusterAssignment& retweet,
                                 const std::set<std::string>& reply_users,
                                 const ingest::SeedSet& seeds) {
  Participation p;
  for (const auto& [user, c] : retweet.entries()) {
    if (c.label == Label::kUnclassified || seeds.Contains(user)) continue;
    ParticipationRow& row = p.rows[static_cast<size_t>(c.label)];
    ++row.base;
    if (reply_users.count(user) > 0) ++row.active;
  }
  for (ParticipationRow& row : p.rows) {
    row.defined = row.base > 0;
    row.share = Ratio(row.active, row.base);
  }
  return p;
}

TestResult ChiSquare(const std::vector<std::vector<double>>& table) {
  const size_t rows = table.size();
  if (rows < 2) {
    throw Error(ErrorCode::kInvalidArgument, "chi-square needs at least 2 rows");
  }
  const size_t cols = table.front().size();
  if (cols < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "chi-square needs at least 2 columns");
  }
  std::vector<double> row_total(rows, 0.0);
  std::vector<double> col_total(cols, 0.0);
  double total = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    if (table[r].size() != cols) {
      throw Error(ErrorCode::kInvalidArgument, "chi-square table is ragged");
    }
    for (size_t c = 0; c < cols; ++c) {
      const double v = table[r][c];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "chi-square cells must be finite and non-negative");
      }
      row_total[r] += v;
      col_total[c] += v;
      total += v;
    }
  }
  for (size_t r = 0; r < rows; ++r) {
    if (row_total[r] == 0.0) {
      throw Error(ErrorCode::kData, fmt::format("chi-square row {} is empty", r));
    }
  }
  for (size_t c = 0; c < cols; ++c) {
    if (col_total[c] == 0.0) {
      throw Error(ErrorCode::kData,
                  fmt::format("chi-square column {} is empty", c));
    }
  }
  TestResult result;
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      const double expected = row_total[r] * col_total[c] / total;
      const double diff = table[r][c] - expected;
      result.statistic += diff * diff / expected;
    }
    result.sample_sizes.push_back(static_cast<std::uint64_t>(row_total[r]));
  }
  result.df = static_cast<int>((rows - 1) * (cols - 1));
  result.p_value =
      boost::math::gamma_q(0.5 * result.df, 0.5 * result.statistic);
  return result;
}

TestResult TwoProportionZ(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2,
                          std::uint64_t n2) {
  if (n1 == 0 || n2 == 0 || k1 > n1 || k2 > n2) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("invalid proportions {}/{} and {}/{}", k1, n1, k2,
                            n2));
  }
  const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  const double pooled =
      static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  if (pooled <= 0.0 || pooled >= 1.0) {
    throw Error(ErrorCode::kData,
                "pooled proportion is 0 or 1; the z statistic is undefined");
  }
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) +
                               1.0 / static_cast<double>(n2)));
  TestResult result;
  result.statistic = (p1 - p2) / se;
  result.p_value = std::erfc(std::abs(result.statistic) / std::sqrt(2.0));
  result.sample_sizes = {n1, n2};
  return result;
}

ParticipationTests TestParticipation(const Participation& participation) {
  ParticipationTests tests;
  std::vector<std::vector<double>> table;
  for (int g = 0; g < classify::kKnownLabels; ++g) {
    const ParticipationRow& row = participation.rows[g];
    if (!row.defined) continue;
    tests.chi_labels.push_back(static_cast<Label>(g));
    table.push_back({static_cast<double>(row.active),
                     static_cast<double>(row.base - row.active)});
  }
  if (table.size() >= 2) {
    try {
      tests.chi_square = ChiSquare(table);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kData) throw;
    }
  }
  for (size_t i = 0; i < tests.chi_labels.size(); ++i) {
    for (size_t j = i + 1; j < tests.chi_labels.size(); ++j) {
      const ParticipationRow& a = participation.row(tests.chi_labels[i]);
      const ParticipationRow& b = participation.row(tests.chi_labels[j]);
      try {
        tests.pairwise.push_back(
            {tests.chi_labels[i], tests.chi_labels[j],
             TwoProportionZ(a.active, a.base, b.active, b.base)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kData) throw;
      }
    }
  }
  return tests;
}

double InteractionMatrix::share(Label from, Label to) const {
  const auto f = static_cast<size_t>(from);
  return Ratio(counts[f][static_cast<size_t>(to)], from_total[f]);
}

InteractionMatrix ComputeInteractionMatrix(
    const forest::ReplyForest& forest,
    const classify::ClusterAssignment& assignment) {
  InteractionMatrix m;
  for (const forest::ReplyTree& tree : forest.trees) {
    for (size_t k = 1; k < tree.nodes.size(); ++k) {
      const forest::TreeNode& node = tree.nodes[k];
      const Label from = assignment.LabelOf(node.author_id);
      if (from == Label::kUnclassified) continue;
      const auto f = static_cast<size_t>(from);
      ++m.from_total[f];
      const Label to = assignment.LabelOf(
          tree.nodes[static_cast<size_t>(node.parent)].author_id);
      if (to != Label::kUnclassified) ++m.counts[f][static_cast<size_t>(to)];
    }
  }
  return m;
}

InteractionMatrix ComputeInteractionMatrix(
    const graph::InteractionGraph& reply_network,
    const classify::ClusterAssignment& assignment) {
  InteractionMatrix m;
  for (graph::NodeIndex u = 0; u < reply_network.node_count(); ++u) {
    const Label from = assignment.LabelOf(reply_network.id(u));
    if (from == Label::kUnclassified) continue;
    const auto f = static_cast<size_t>(from);
    for (const auto& [v, weight] : reply_network.out_edges(u)) {
      m.from_total[f] += weight;
      const Label to = assignment.LabelOf(reply_network.id(v));
      if (to != Label::kUnclassified) {
        m.counts[f][static_cast<size_t>(to)] += weight;
      }
    }
  }
  return m;
}

void WriteEngagementCsv(const EngagementTable& table, std::ostream& out) {
  out << "label,users,user_share,replies,reply_share\n";
  for (int g = 0; g < kAllLabels; ++g) {
    const EngagementRow& row = table.rows[g];
    out << classify::LabelName(static_cast<Label>(g)) << ',' << row.users << ','
        << FormatDouble(row.user_share) << ',' << row.replies << ','
        << FormatDouble(row.reply_share) << '\n';
  }
  out << "total," << table.total_users << ",1," << table.total_replies
      << ",1\n";
}

void WriteParticipationCsv(const Participation& participation,
                           std::ostream& out) {
  out << "label,active,base,share\n";
  for (int g = 0; g < classify::kKnownLabels; ++g) {
    const ParticipationRow& row = participation.rows[g];
    out << classify::LabelName(static_cast<Label>(g)) << ',' << row.active
        << ',' << row.base << ','
        << (row.defined ? FormatDouble(row.share) : std::string()) << '\n';
  }
}

void WriteTestsCsv(const ParticipationTests& tests, std::ostream& out) {
  out << "test,groups,statistic,df,p_value\n";
  if (tests.chi_square) {
    std::string groups;
    for (Label label : tests.chi_labels) {
      if (!groups.empty()) groups += '|';
      groups += classify::LabelName(label);
    }
    out << "chi_square," << groups << ','
        << FormatDouble(tests.chi_square->statistic) << ','
        << tests.chi_square->df << ','
        << FormatDouble(tests.chi_square->p_value) << '\n';
  }
  for (const auto& pair : tests.pairwise) {
    out << "two_proportion_z," << classify::LabelName(pair.first) << '|'
        << classify::LabelName(pair.second) << ','
        << FormatDouble(pair.z.statistic) << ",,"
        << FormatDouble(pair.z.p_value) << '\n';
  }
}

void WriteInteractionCsv(const InteractionMatrix& matrix, std::ostream& out) {
  out << "from_label,to_label,count,from_total,share\n";
  for (int f = 0; f < classify::kKnownLabels; ++f) {
    for (int t = 0; t < classify::kKnownLabels; ++t) {
      out << classify::LabelName(static_cast<Label>(f)) << ','
          << classify::LabelName(static_cast<Label>(t)) << ','
          << matrix.counts[f][t] << ',' << matrix.from_total[f] << ','
          << FormatDouble(matrix.share(static_cast<Label>(f),
                                       static_cast<Label>(t)))
          << '\n';
    }
  }
}

}  // namespace debatenet::stats
