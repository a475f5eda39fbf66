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

#include "pipeline/report.hpp"

#include <string_view>

#include <fmt/format.h>
#include <json.hpp>

#include "common/files.hpp"
#include "pipeline/pipeline.hpp"

namespace debatenet::pipeline {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kLabels[] = {"majority", "minority", "intermediate",
                                        "unclassified"};

std::string Percent(const ordered_json& value) {
  if (!value.is_number()) return "n/a";
  return fmt::format("{:.1f}%", 100.0 * value.get<double>());
}

std::string Fixed(const ordered_json& value, int digits = 3) {
  if (!value.is_number()) return "n/a";
  return fmt::format("{:.{}f}", value.get<double>(), digits);
}

std::string EngagementText(const ordered_json& table) {
  std::string text = fmt::format("  {:<14}{:>10}{:>10}{:>10}{:>10}\n", "cluster",
                                 "users", "share", "replies", "share");
  for (std::string_view label : kLabels) {
    const ordered_json& row = table["rows"][std::string(label)];
    text += fmt::format("  {:<14}{:>10}{:>10}{:>10}{:>10}\n", label,
                        row["users"].get<std::uint64_t>(), Percent(row["user_share"]),
                        row["replies"].get<std::uint64_t>(),
                        Percent(row["reply_share"]));
  }
  text += fmt::format("  {:<14}{:>10}{:>10}{:>10}\n", "total",
                      table["total_users"].get<std::uint64_t>(), "",
                      table["total_replies"].get<std::uint64_t>());
  return text;
}

std::string SummaryText(const ordered_json& r) {
  const ordered_json& ingest = r["ingest"];
  const ordered_json& nets = r["retweet_networks"];
  const ordered_json& forest = r["reply_trees"];
  const ordered_json& cov = r["classification"];
  const ordered_json& assort = r["assortativity"];
  const ordered_json& stats = r["statistics"];

  std::string t = "debatenet report\n================\n\n";
  t += fmt::format(
      "Corpus: {} archive records; {} in the event window ({} originals, {} "
      "retweets, {} replies); {} seed users.\n",
      ingest["archive_records"].get<std::uint64_t>(),
      ingest["event_records"].get<std::uint64_t>(),
      ingest["event_originals"].get<std::uint64_t>(),
      ingest["event_retweets"].get<std::uint64_t>(),
      ingest["event_replies"].get<std::uint64_t>(),
      ingest["seeds"].get<std::uint64_t>());
  t += fmt::format(
      "Retweet networks (giant component): event {} users / {} edges, "
      "fallback {} users / {} edges.\n",
      nets["event"]["giant_nodes"].get<std::uint64_t>(),
      nets["event"]["giant_edges"].get<std::uint64_t>(),
      nets["fallback"]["giant_nodes"].get<std::uint64_t>(),
      nets["fallback"]["giant_edges"].get<std::uint64_t>());
  t += fmt::format(
      "Reply trees: {} trees, {} replies, {} first-order; largest S = {}, "
      "deepest D = {}; {} participants.\n",
      forest["trees"].get<std::uint64_t>(), forest["replies"].get<std::uint64_t>(),
      forest["first_order"].get<std::uint64_t>(),
      forest["max_size"].get<std::uint64_t>(), forest["max_depth"].get<std::uint64_t>(),
      forest["participants"].get<std::uint64_t>());
  t += fmt::format(
      "Coverage of tree participants: {} from the event network, {} after "
      "fallback.\n\n",
      Percent(cov["event_coverage"]), Percent(cov["merged_coverage"]));

  t += "Users and replies by retweet cluster\n";
  t += EngagementText(stats["engagement"]);
  t += "\nFirst-order replies by retweet cluster\n";
  t += EngagementText(stats["first_order"]);

  t += "\nRetweet-network users active in the reply trees (seeds excluded)\n";
  for (int k = 0; k < 3; ++k) {
    const ordered_json& row = stats["participation"][std::string(kLabels[k])];
    t += fmt::format("  {:<14}{:>8} of {:<8}{:>10}\n", kLabels[k],
                     row["active"].get<std::uint64_t>(),
                     row["base"].get<std::uint64_t>(), Percent(row["share"]));
  }
  t += fmt::format("  minority/majority share ratio: {}\n",
                   Fixed(stats["participation_ratio_minority_majority"]));
  const ordered_json& chi = stats["tests"]["chi_square"];
  if (chi.is_object()) {
    t += fmt::format("  chi-square = {} (df {}), p = {:.3g}\n", Fixed(chi["statistic"], 1),
                     chi["df"].get<int>(), chi["p_value"].get<double>());
  }
  for (const ordered_json& z : stats["tests"]["pairwise"]) {
    t += fmt::format("  z({} vs {}) = {}, p = {:.3g}\n", z["first"].get<std::string>(),
                     z["second"].get<std::string>(), Fixed(z["statistic"], 2),
                     z["p_value"].get<double>());
  }

  t += "\nReply interactions (row: replying cluster; share of its replies)\n";
  t += fmt::format("  {:<14}{:>16}{:>16}{:>16}{:>10}\n", "from \\ to", kLabels[0],
                   kLabels[1], kLabels[2], "total");
  for (int from = 0; from < 3; ++from) {
    const ordered_json& row = stats["interaction"][std::string(kLabels[from])];
    std::string line = fmt::format("  {:<14}", kLabels[from]);
    for (int to = 0; to < 3; ++to) {
      const ordered_json& cell = row[std::string(kLabels[to])];
      line += fmt::format("{:>16}", fmt::format("{} ({})", cell["count"].get<std::uint64_t>(),
                                                Percent(cell["share"])));
    }
    t += line + fmt::format("{:>10}\n", row["from_total"].get<std::uint64_t>());
  }

  t += fmt::format("\nReply network assortativity: global r = {}\n", Fixed(assort["r"]));
  t += "  z-weighted mean local r:";
  for (int k = 0; k < 3; ++k) {
    t += fmt::format(" {} {}", kLabels[k],
                     Fixed(assort["mean_local_r"][std::string(kLabels[k])]));
    t += k < 2 ? "," : "\n";
  }
  t += fmt::format("  nodes {}, excluded for lack of labeled mass {}\n",
                   assort["nodes"].get<std::uint64_t>(),
                   assort["flagged"].get<std::uint64_t>());
  return t;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> BuildReport(
    const std::function<std::filesystem::path(Stage)>& stage_dir) {
  std::vector<std::pair<std::string, std::string>> files;
  auto copy = [&](Stage stage, const char* name) {
    const std::filesystem::path path = stage_dir(stage) / name;
    if (std::filesystem::is_regular_file(path)) files.emplace_back(name, ReadFile(path));
  };
  copy(Stage::kStats, "engagement.csv");
  copy(Stage::kStats, "first_order.csv");
  copy(Stage::kStats, "participation.csv");
  copy(Stage::kStats, "tests.csv");
  copy(Stage::kStats, "interaction_matrix.csv");
  copy(Stage::kForest, "size_ccdf.csv");
  copy(Stage::kForest, "depth_ccdf.csv");
  copy(Stage::kForest, "size_ccdf.svg");
  copy(Stage::kForest, "depth_ccdf.svg");
  copy(Stage::kAssort, "histogram.csv");
  copy(Stage::kAssort, "histogram.svg");
  copy(Stage::kClassify, "event_layout.svg");
  copy(Stage::kClassify, "fallback_layout.svg");

  auto json = [&](Stage stage, const char* name) {
    return ordered_json::parse(ReadFile(stage_dir(stage) / name));
  };
  ordered_json r;
  r["ingest"] = json(Stage::kIngest, "summary.json");
  r["retweet_networks"] = json(Stage::kRetweetNet, "summary.json");
  r["reply_trees"] = json(Stage::kForest, "tally.json");
  r["classification"] = json(Stage::kClassify, "coverage.json");
  r["assortativity"] = json(Stage::kAssort, "global.json");
  r["statistics"] = json(Stage::kStats, "summary.json");
  files.emplace_back("report.json", r.dump(2) + "\n");
  files.emplace_back("report.txt", SummaryText(r));
  return files;
}

}  // namespace debatenet::pipeline
