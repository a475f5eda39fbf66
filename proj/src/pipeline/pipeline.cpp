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

#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "assort/assortativity.hpp"
#include "classify/clusters.hpp"
#include "common/error.hpp"
#include "common/csv.hpp"
#include "common/files.hpp"
#include "common/random.hpp"
#include "common/timeutil.hpp"
#include "forest/forest_io.hpp"
#include "forest/reply_forest.hpp"
#include "graph/graph_io.hpp"
#include "graph/interaction_graph.hpp"
#include "ingest/filters.hpp"
#include "layout/force_layout.hpp"
#include "pipeline/report.hpp"
#include "report/svg.hpp"
#include "stats/tables.hpp"
#include "synth/generator.hpp"

namespace debatenet::pipeline {

namespace {

using classify::Label;
using nlohmann::ordered_json;

constexpr const char* kManifestFile = "manifest.json";

struct StageInfo {
  Stage stage;
  std::string_view name;
  std::vector<Stage> upstream;
};

const std::vector<StageInfo>& StageTable() {
  static const std::vector<StageInfo> table = {
      {Stage::kIngest, "ingest", {}},
      {Stage::kRetweetNet, "retweet-net", {Stage::kIngest}},
      {Stage::kForest, "forest", {Stage::kIngest}},
      {Stage::kLayout, "layout", {Stage::kRetweetNet}},
      {Stage::kClassify, "classify", {Stage::kLayout, Stage::kForest}},
      {Stage::kAssort, "assort", {Stage::kForest, Stage::kClassify}},
      {Stage::kStats, "stats", {Stage::kIngest, Stage::kForest, Stage::kClassify}},
      {Stage::kReport,
       "report",
       {Stage::kIngest, Stage::kRetweetNet, Stage::kForest, Stage::kClassify,
        Stage::kAssort, Stage::kStats}},
  };
  return table;
}

// Collects the files a stage writes, always through atomic replacement.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

  void Write(const std::string& name,
             const std::function<void(std::ostream&)>& writer) {
    WriteFileAtomically(dir_ / name, writer);
    names_.push_back(name);
  }
  void Text(const std::string& name, const std::string& text) {
    Write(name, [&](std::ostream& out) { out << text; });
  }
  void Json(const std::string& name, const ordered_json& value) {
    Text(name, value.dump(2) + "\n");
  }

  std::vector<std::string>& names() { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

std::ifstream OpenInput(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  return in;
}

ingest::ParseResult ParseArchiveFile(const fs::path& path,
                                     const ingest::ParseOptions& options) {
  std::ifstream in = OpenInput(path);
  return ingest::ParseArchive(in, options);
}

// Records written by an earlier stage; any malformed line is an error.
std::vector<ingest::InteractionRecord> ReadRecords(const fs::path& path) {
  ingest::ParseOptions options;
  options.strict = true;
  return ParseArchiveFile(path, options).records;
}

ingest::SeedSet ReadSeeds(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return ingest::ReadSeedSet(in);
}

graph::InteractionGraph ReadGraph(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return graph::ReadEdgeList(in);
}

forest::ReplyForest ReadForestFile(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return forest::ReadForest(in);
}

layout::LayoutEmbedding ReadEmbedding(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return layout::ReadEmbeddingCsv(in);
}

classify::ClusterAssignment ReadAssignment(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return classify::ReadAssignmentCsv(in);
}

classify::BoundarySpec ReadBoundaryFile(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return classify::ReadBoundaries(in);
}

std::map<std::string, Label> ReadReference(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return synth::ReadTruthCsv(in);
}

ordered_json NumberOrNull(double value) {
  return std::isfinite(value) ? ordered_json(value) : ordered_json(nullptr);
}

ordered_json GraphSummary(const graph::InteractionGraph& full,
                          const graph::InteractionGraph& giant) {
  const graph::ComponentLabeling components = graph::WeakComponents(full);
  return {{"nodes", full.node_count()},
          {"edges", full.edge_count()},
          {"weight", full.total_weight()},
          {"self_loops", full.self_loop_tally()},
          {"components", components.sizes.size()},
          {"giant_nodes", giant.node_count()},
          {"giant_edges", giant.edge_count()},
          {"giant_weight", giant.total_weight()}};
}

std::vector<std::string> Participants(const forest::ReplyForest& forest) {
  std::set<std::string> users;
  for (const forest::ReplyTree& tree : forest.trees) {
    for (const forest::TreeNode& node : tree.nodes) users.insert(node.author_id);
  }
  return {users.begin(), users.end()};
}

ordered_json LabelCountsJson(const std::array<size_t, 4>& counts) {
  ordered_json out;
  for (int k = 0; k < 4; ++k) {
    out[std::string(classify::LabelName(static_cast<Label>(k)))] = counts[k];
  }
  return out;
}

ordered_json EngagementJson(const stats::EngagementTable& table) {
  ordered_json rows = ordered_json::object();
  for (int k = 0; k < stats::kAllLabels; ++k) {
    const stats::EngagementRow& row = table.rows[k];
    rows[std::string(classify::LabelName(static_cast<Label>(k)))] = {
        {"users", row.users},
        {"user_share", row.user_share},
        {"replies", row.replies},
        {"reply_share", row.reply_share}};
  }
  return {{"rows", rows},
          {"total_users", table.total_users},
          {"total_replies", table.total_replies}};
}

ordered_json TestJson(const stats::TestResult& t) {
  return {{"statistic", t.statistic},
          {"df", t.df},
          {"p_value", t.p_value},
          {"sample_sizes", t.sample_sizes}};
}

}  // namespace

std::string_view StageName(Stage stage) {
  for (const StageInfo& info : StageTable()) {
    if (info.stage == stage) return info.name;
  }
  return "unknown";
}

std::optional<Stage> ParseStage(std::string_view name) {
  for (const StageInfo& info : StageTable()) {
    if (info.name == name) return info.stage;
  }
  return std::nullopt;
}

std::vector<Stage> Upstream(Stage stage) {
  for (const StageInfo& info : StageTable()) {
    if (info.stage == stage) return info.upstream;
  }
  return {};
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  ValidateConfig(config_);
}

fs::path Pipeline::StageDir(Stage stage) const {
  return config_.workspace / std::string(StageName(stage));
}

std::optional<Manifest> Pipeline::LoadManifest(Stage stage) const {
  const fs::path path = StageDir(stage) / kManifestFile;
  if (!fs::is_regular_file(path)) return std::nullopt;
  return ParseManifest(ReadFile(path));
}

std::map<std::string, FileDigest> Pipeline::CurrentInputs(Stage stage) const {
  std::map<std::string, FileDigest> inputs;
  auto external = [&](const std::string& name, const std::optional<fs::path>& path) {
    if (path) inputs[name] = {path->string(), Sha256File(*path)};
  };
  switch (stage) {
    case Stage::kIngest:
      external("archive", config_.archive);
      external("seeds", config_.seeds);
      external("fallback_archive", config_.fallback_archive);
      break;
    case Stage::kClassify:
      external("boundaries.event", config_.boundaries_event);
      external("boundaries.fallback", config_.boundaries_fallback);
      external("reference_labels", config_.reference_labels);
      break;
    default:
      break;
  }
  for (Stage up : Upstream(stage)) {
    const std::optional<Manifest> manifest = LoadManifest(up);
    if (!manifest) {
      throw Error(ErrorCode::kDependency,
                  fmt::format("stage '{}' needs the artifacts of '{}'; run "
                              "`debatenet {}` first",
                              StageName(stage), StageName(up), StageName(up)));
    }
    for (const auto& [name, sha] : manifest->outputs) {
      const std::string key = fmt::format("{}/{}", StageName(up), name);
      inputs[key] = {key, sha};
    }
  }
  return inputs;
}

ordered_json Pipeline::Parameters(Stage stage) const {
  const ordered_json all = ConfigToJson(config_);
  ordered_json params = ordered_json::object();
  switch (stage) {
    case Stage::kIngest:
      params["strict"] = all["strict"];
      params["quotes"] = all["quotes"];
      params["filter"] = all["filter"];
      params["snowball"] = all["snowball"];
      break;
    case Stage::kForest:
      params["strict"] = all["strict"];
      break;
    case Stage::kLayout:
      params["layout"] = all["layout"];
      params["seed"] = config_.seed;
      break;
    case Stage::kClassify:
      params["audit_sample"] = config_.audit_sample;
      params["seed"] = config_.seed;
      break;
    case Stage::kAssort:
      params["assort"] = all["assort"];
      break;
    default:
      break;
  }
  return params;
}

std::optional<std::string> Pipeline::Staleness(Stage stage) const {
  const std::optional<Manifest> manifest = LoadManifest(stage);
  if (!manifest) return "no previous run";
  if (manifest->tool_version != kToolVersion) {
    return fmt::format("written by version {}", manifest->tool_version);
  }
  if (manifest->parameters != Parameters(stage)) return "parameters changed";
  const std::map<std::string, FileDigest> current = CurrentInputs(stage);
  for (const auto& [name, digest] : current) {
    auto it = manifest->inputs.find(name);
    if (it == manifest->inputs.end() || it->second.sha256 != digest.sha256) {
      return fmt::format("input '{}' changed", name);
    }
  }
  for (const auto& [name, digest] : manifest->inputs) {
    if (current.count(name) == 0) return fmt::format("input '{}' removed", name);
  }
  for (const auto& [name, sha] : manifest->outputs) {
    const fs::path path = StageDir(stage) / name;
    if (!fs::is_regular_file(path) || Sha256File(path) != sha) {
      return fmt::format("artifact '{}' missing or modified", name);
    }
  }
  return std::nullopt;
}

void Pipeline::CheckUpstream(Stage stage, bool force) const {
  std::set<Stage> ancestors;
  std::vector<Stage> frontier = Upstream(stage);
  while (!frontier.empty()) {
    const Stage s = frontier.back();
    frontier.pop_back();
    if (!ancestors.insert(s).second) continue;
    for (Stage up : Upstream(s)) frontier.push_back(up);
  }
  std::vector<Stage> missing;
  for (Stage s : kStageOrder) {
    if (ancestors.count(s) != 0 && !LoadManifest(s)) missing.push_back(s);
  }
  if (!missing.empty()) {
    // Name the latest missing direct dependency first.
    Stage first = missing.back();
    const std::vector<Stage> direct = Upstream(stage);
    for (auto it = missing.rbegin(); it != missing.rend(); ++it) {
      if (std::find(direct.begin(), direct.end(), *it) != direct.end()) {
        first = *it;
        break;
      }
    }
    std::string others;
    for (Stage s : missing) {
      if (s == first) continue;
      others += others.empty() ? "" : ", ";
      others += StageName(s);
    }
    throw Error(ErrorCode::kDependency,
                fmt::format("stage '{}' needs the artifacts of '{}'; run "
                            "`debatenet {}` first{}",
                            StageName(stage), StageName(first), StageName(first),
                            others.empty()
                                ? std::string()
                                : fmt::format(" (also missing: {}; `debatenet "
                                              "run` builds everything)",
                                              others)));
  }
  if (force) return;
  for (Stage s : kStageOrder) {
    if (ancestors.count(s) == 0) continue;
    if (const auto reason = Staleness(s)) {
      throw Error(ErrorCode::kStale,
                  fmt::format("upstream stage '{}' is out of date ({}); re-run "
                              "`debatenet {}` or pass --force",
                              StageName(s), *reason, StageName(s)));
    }
  }
}

StageOutcome Pipeline::Run(Stage stage, const RunOptions& options) {
  CheckUpstream(stage, options.force);
  StageOutcome outcome;
  outcome.stage = stage;
  outcome.directory = StageDir(stage);
  const std::optional<Manifest> previous = LoadManifest(stage);
  if (!options.force && previous && !Staleness(stage)) {
    outcome.skipped = true;
    for (const auto& [name, sha] : previous->outputs) outcome.artifacts.push_back(name);
    return outcome;
  }

  Manifest manifest;
  manifest.stage = std::string(StageName(stage));
  manifest.parameters = Parameters(stage);
  manifest.inputs = CurrentInputs(stage);

  fs::create_directories(outcome.directory);
  // Without a manifest the stage counts as missing until it completes.
  fs::remove(outcome.directory / kManifestFile);
  outcome.artifacts = Execute(stage, outcome.notes);
  if (previous) {
    for (const auto& [name, sha] : previous->outputs) {
      if (std::find(outcome.artifacts.begin(), outcome.artifacts.end(), name) ==
          outcome.artifacts.end()) {
        std::error_code ignored;
        fs::remove(outcome.directory / name, ignored);
      }
    }
  }
  for (const std::string& name : outcome.artifacts) {
    manifest.outputs[name] = Sha256File(outcome.directory / name);
  }
  manifest.created = CreationTimestamp();
  WriteFileAtomically(outcome.directory / kManifestFile,
                      [&](std::ostream& out) { out << ManifestToJson(manifest); });
  return outcome;
}

std::vector<StageOutcome> Pipeline::RunAll(const RunOptions& options) {
  std::vector<StageOutcome> outcomes;
  for (Stage stage : kStageOrder) outcomes.push_back(Run(stage, options));
  return outcomes;
}

std::vector<std::string> Pipeline::Execute(Stage stage,
                                           std::vector<std::string>& notes) {
  const PipelineConfig& c = config_;
  Artifacts out(StageDir(stage));
  auto in = [&](Stage s, const char* name) { return StageDir(s) / name; };

  switch (stage) {
    case Stage::kIngest: {
      ingest::ParseOptions options;
      options.strict = c.strict;
      options.quotes = c.quotes;
      ingest::ParseResult parsed = ParseArchiveFile(c.archive, options);
      ingest::SeedSet seeds = ReadSeeds(c.seeds);
      const size_t given_seeds = seeds.size();
      if (c.snowball.rounds > 0 && !parsed.records.empty()) {
        auto [lo, hi] = std::minmax_element(
            parsed.records.begin(), parsed.records.end(),
            [](const auto& a, const auto& b) { return a.created_at < b.created_at; });
        const double weeks = static_cast<double>(hi->created_at - lo->created_at) /
                             static_cast<double>(kSecondsPerWeek);
        for (int round = 0; round < c.snowball.rounds; ++round) {
          ingest::SeedSet next = ingest::SnowballExpand(
              parsed.records, seeds, c.snowball.min_weekly_rate, weeks);
          if (next.size() == seeds.size()) break;
          notes.push_back(fmt::format("snowball round {}: {} new seed users",
                                      round + 1, next.size() - seeds.size()));
          seeds = std::move(next);
        }
      }
      const std::vector<ingest::InteractionRecord> event =
          ingest::ApplyCorpusFilter(parsed.records, c.filter);
      if (event.empty()) {
        throw Error(ErrorCode::kData,
                    "no archive record falls inside the filter window and keywords");
      }
      std::vector<ingest::InteractionRecord> background;
      size_t background_records = parsed.records.size();
      if (c.fallback_archive) {
        ingest::ParseResult extra = ParseArchiveFile(*c.fallback_archive, options);
        background_records = extra.records.size();
        for (auto& r : extra.records) {
          if (r.kind == ingest::RecordKind::kRetweet) background.push_back(std::move(r));
        }
      } else {
        for (const auto& r : parsed.records) {
          if (r.kind == ingest::RecordKind::kRetweet) background.push_back(r);
        }
      }
      std::array<size_t, 3> kinds{};
      for (const auto& r : event) ++kinds[static_cast<size_t>(r.kind)];

      out.Write("event.jsonl", [&](std::ostream& o) { ingest::SerializeArchive(event, o); });
      out.Write("retweets_all.jsonl",
                [&](std::ostream& o) { ingest::SerializeArchive(background, o); });
      out.Write("seeds.tsv", [&](std::ostream& o) { ingest::WriteSeedSet(seeds, o); });
      ordered_json issues = ordered_json::array();
      for (size_t i = 0; i < parsed.errors.size() && i < 50; ++i) {
        issues.push_back({{"line", parsed.errors[i].line},
                          {"message", parsed.errors[i].message}});
      }
      if (!parsed.errors.empty()) {
        notes.push_back(fmt::format("{} malformed archive lines skipped",
                                    parsed.errors.size()));
      }
      out.Json("summary.json",
               {{"archive_records", parsed.records.size()},
                {"parse_errors", parsed.errors.size()},
                {"issues", issues},
                {"dropped_quotes", parsed.dropped_quotes},
                {"event_records", event.size()},
                {"event_originals", kinds[0]},
                {"event_retweets", kinds[1]},
                {"event_replies", kinds[2]},
                {"background_records", background_records},
                {"background_retweets", background.size()},
                {"seeds_given", given_seeds},
                {"seeds", seeds.size()}});
      break;
    }

    case Stage::kRetweetNet: {
      ordered_json summary;
      for (const char* which : {"event", "fallback"}) {
        const fs::path source = std::string(which) == "event"
                                    ? in(Stage::kIngest, "event.jsonl")
                                    : in(Stage::kIngest, "retweets_all.jsonl");
        const graph::InteractionGraph full =
            graph::BuildRetweetNetwork(ReadRecords(source));
        const graph::InteractionGraph giant = graph::GiantComponent(full);
        if (std::string(which) == "event" && giant.edge_count() == 0) {
          throw Error(ErrorCode::kData, "the event retweet network has no edges");
        }
        out.Write(fmt::format("{}_network.tsv", which),
                  [&](std::ostream& o) { graph::WriteEdgeList(giant, o); });
        summary[which] = GraphSummary(full, giant);
      }
      out.Json("summary.json", summary);
      break;
    }

    case Stage::kForest: {
      const auto records = ReadRecords(in(Stage::kIngest, "event.jsonl"));
      const ingest::SeedSet seeds = ReadSeeds(in(Stage::kIngest, "seeds.tsv"));
      const forest::ReplyForest f = forest::BuildForest(records, seeds, c.strict);
      if (f.trees.empty()) {
        throw Error(ErrorCode::kData,
                    "no reply tree: the event corpus holds no seed-authored original");
      }
      std::vector<std::uint64_t> sizes;
      std::vector<std::uint64_t> depths;
      std::uint64_t replies = 0;
      std::uint64_t first_order = 0;
      for (const forest::ReplyTree& tree : f.trees) {
        const forest::TreeMetrics m = forest::ComputeTreeMetrics(tree);
        sizes.push_back(m.size);
        depths.push_back(m.depth);
        replies += m.reply_count();
        first_order += m.first_order;
      }
      const graph::InteractionGraph reply = forest::AggregateReplyNetwork(f);
      const auto size_ccdf = forest::Ccdf(sizes);
      const auto depth_ccdf = forest::Ccdf(depths);
      out.Write("trees.jsonl", [&](std::ostream& o) { forest::WriteForest(f, o); });
      out.Write("metrics.csv", [&](std::ostream& o) { forest::WriteMetricsCsv(f, o); });
      out.Write("size_ccdf.csv",
                [&](std::ostream& o) { forest::WriteCcdfCsv(size_ccdf, o); });
      out.Write("depth_ccdf.csv",
                [&](std::ostream& o) { forest::WriteCcdfCsv(depth_ccdf, o); });
      out.Write("size_ccdf.svg", [&](std::ostream& o) {
        report::WriteCcdfSvg({{"reply trees", size_ccdf}}, "tree size S", true, o);
      });
      out.Write("depth_ccdf.svg", [&](std::ostream& o) {
        report::WriteCcdfSvg({{"reply trees", depth_ccdf}}, "tree depth D", false, o);
      });
      out.Write("reply_network.tsv",
                [&](std::ostream& o) { graph::WriteEdgeList(reply, o); });
      ordered_json tally = ordered_json::parse(forest::ForestTallyToJson(f.tally));
      tally["trees"] = f.trees.size();
      tally["replies"] = replies;
      tally["first_order"] = first_order;
      tally["max_size"] = *std::max_element(sizes.begin(), sizes.end());
      tally["max_depth"] = *std::max_element(depths.begin(), depths.end());
      tally["participants"] = Participants(f).size();
      tally["reply_network_nodes"] = reply.node_count();
      tally["reply_network_edges"] = reply.edge_count();
      tally["reply_network_weight"] = reply.total_weight();
      tally["self_replies"] = reply.self_loop_tally();
      tally["reply_mass_consistent"] =
          replies == reply.total_weight() + reply.self_loop_tally();
      out.Json("tally.json", tally);
      break;
    }

    case Stage::kLayout: {
      ordered_json summary;
      for (const char* which : {"event", "fallback"}) {
        const graph::InteractionGraph g =
            ReadGraph(in(Stage::kRetweetNet, fmt::format("{}_network.tsv", which).c_str()));
        layout::LayoutEmbedding embedding;
        if (!g.empty()) {
          layout::LayoutParams params = c.layout;
          params.threads = c.threads;
          embedding = layout::Spatialize(g, params, c.seed);
        }
        out.Write(fmt::format("{}_embedding.csv", which),
                  [&](std::ostream& o) { layout::WriteEmbeddingCsv(embedding, o); });
        out.Write(fmt::format("{}_layout.svg", which), [&](std::ostream& o) {
          report::WriteLayoutSvg(embedding, nullptr, nullptr, o);
        });
        try {
          const classify::BoundarySpec suggestion = classify::SuggestBoundaries(embedding);
          out.Write(fmt::format("suggested_boundaries_{}.txt", which),
                    [&](std::ostream& o) { classify::WriteBoundaries(suggestion, o); });
        } catch (const Error& e) {
          notes.push_back(fmt::format("no boundary suggestion for the {} layout: {}",
                                      which, e.what()));
        }
        summary[which] = {{"nodes", embedding.ids.size()},
                          {"iterations", embedding.iterations},
                          {"mean_displacement", embedding.mean_displacement},
                          {"seed", embedding.seed}};
      }
      out.Json("summary.json", summary);
      break;
    }

    case Stage::kClassify: {
      const forest::ReplyForest f = ReadForestFile(in(Stage::kForest, "trees.jsonl"));
      const std::vector<std::string> participants = Participants(f);
      std::optional<std::map<std::string, Label>> reference;
      if (c.reference_labels) reference = ReadReference(*c.reference_labels);

      ordered_json coverage;
      std::array<classify::ClusterAssignment, 2> assignments;
      for (int k = 0; k < 2; ++k) {
        const std::string which = k == 0 ? "event" : "fallback";
        const std::optional<fs::path>& file =
            k == 0 ? c.boundaries_event : c.boundaries_fallback;
        const layout::LayoutEmbedding embedding =
            ReadEmbedding(in(Stage::kLayout, fmt::format("{}_embedding.csv", which).c_str()));
        std::optional<classify::BoundarySpec> boundaries;
        std::string source;
        if (file) {
          boundaries = ReadBoundaryFile(*file);
          source = "file";
        } else if (reference && !embedding.ids.empty()) {
          boundaries = classify::BoundariesFromReference(embedding, *reference);
          source = "reference_labels";
        } else if (k == 0) {
          throw Error(ErrorCode::kInvalidArgument,
                      fmt::format("boundaries.event: no boundary file configured; "
                                  "draw two regions over {} (a starting point is {}) "
                                  "or set reference_labels",
                                  in(Stage::kLayout, "event_layout.svg").string(),
                                  in(Stage::kLayout, "suggested_boundaries_event.txt")
                                      .string()));
        } else {
          notes.push_back("no fallback boundaries; fallback classification skipped");
          source = "none";
        }
        classify::ClusterAssignment& assignment = assignments[k];
        ordered_json entry = {{"boundary_source", source}, {"nodes", embedding.ids.size()}};
        if (boundaries) {
          const classify::AssignmentResult result =
              classify::AssignClusters(embedding, *boundaries);
          const classify::Provenance provenance =
              k == 0 ? classify::Provenance::kEventNetwork
                     : classify::Provenance::kFallbackNetwork;
          for (const auto& [user, cl] : result.assignment.entries()) {
            assignment.Set(user, cl.label,
                           cl.label == Label::kUnclassified ? classify::Provenance::kNone
                                                            : provenance);
          }
          out.Write(fmt::format("boundaries_{}.txt", which),
                    [&](std::ostream& o) { classify::WriteBoundaries(*boundaries, o); });
          out.Write(fmt::format("{}_layout.svg", which), [&](std::ostream& o) {
            report::WriteLayoutSvg(embedding, &assignment, &*boundaries, o);
          });
          entry["majority_region"] = result.majority_region;
          entry["minority_region"] = result.minority_region;
        }
        entry["labels"] = LabelCountsJson(assignment.LabelCounts());
        out.Write(fmt::format("{}_assignment.csv", which),
                  [&](std::ostream& o) { classify::WriteAssignmentCsv(assignment, o); });
        coverage[which] = entry;
      }
      const classify::ClusterAssignment merged =
          classify::FallbackMerge(assignments[0], assignments[1], participants);
      out.Write("reply_assignment.csv",
                [&](std::ostream& o) { classify::WriteAssignmentCsv(merged, o); });
      size_t from_fallback = 0;
      for (const auto& [user, cl] : merged.entries()) {
        from_fallback += cl.provenance == classify::Provenance::kFallbackNetwork;
      }
      coverage["participants"] = participants.size();
      coverage["event_coverage"] = classify::Coverage(assignments[0], participants);
      coverage["merged_coverage"] = classify::Coverage(merged, participants);
      coverage["from_fallback"] = from_fallback;
      coverage["merged_labels"] = LabelCountsJson(merged.LabelCounts());
      out.Json("coverage.json", coverage);

      // Random sample of classified participants for a manual audit.
      std::vector<std::string> classified;
      for (const auto& [user, cl] : merged.entries()) {
        if (cl.label != Label::kUnclassified) classified.push_back(user);
      }
      Rng rng(c.seed);
      const size_t take = std::min(c.audit_sample, classified.size());
      for (size_t i = 0; i < take; ++i) {
        const size_t j = i + rng.Below(classified.size() - i);
        std::swap(classified[i], classified[j]);
      }
      classified.resize(take);
      std::sort(classified.begin(), classified.end());
      out.Write("audit_sample.csv", [&](std::ostream& o) {
        o << "user_id,label,provenance\n";
        for (const std::string& user : classified) {
          const classify::Classification cl = merged.Get(user);
          o << CsvEscape(user) << ',' << classify::LabelName(cl.label) << ','
            << classify::ProvenanceName(cl.provenance) << '\n';
        }
      });
      break;
    }

    case Stage::kAssort: {
      const graph::InteractionGraph reply = ReadGraph(in(Stage::kForest, "reply_network.tsv"));
      const classify::ClusterAssignment merged =
          ReadAssignment(in(Stage::kClassify, "reply_assignment.csv"));
      const assort::AssortativityProfile profile =
          assort::ComputeProfile(reply, merged, c.ppr, c.threads);
      const assort::Histogram histogram = assort::AssortHistogram(profile, c.bins);
      out.Write("profile.csv", [&](std::ostream& o) { assort::WriteProfileCsv(profile, o); });
      out.Write("histogram.csv",
                [&](std::ostream& o) { assort::WriteHistogramCsv(histogram, o); });
      out.Write("histogram.svg",
                [&](std::ostream& o) { report::WriteHistogramSvg(histogram, o); });
      const assort::MixingMatrix& m = profile.global.mixing;
      ordered_json e = ordered_json::array();
      for (const auto& row : m.e) e.push_back(row);
      ordered_json mean = ordered_json::object();
      ordered_json flagged_by_label = ordered_json::object();
      for (int k = 0; k < classify::kKnownLabels; ++k) {
        const Label label = static_cast<Label>(k);
        mean[std::string(classify::LabelName(label))] =
            NumberOrNull(assort::WeightedMeanR(profile, label));
      }
      size_t flagged = 0;
      for (const auto& entry : profile.entries) flagged += entry.flagged;
      for (const std::string& w : profile.warnings) notes.push_back(w);
      out.Json("global.json", {{"r", profile.global.r},
                               {"single_group", profile.global.single_group},
                               {"labeled_mass", m.labeled_mass},
                               {"e", e},
                               {"a", m.a},
                               {"b", m.b},
                               {"mean_local_r", mean},
                               {"nodes", profile.entries.size()},
                               {"flagged", flagged},
                               {"clamped_mass", histogram.clamped_mass},
                               {"warnings", profile.warnings}});
      break;
    }

    case Stage::kStats: {
      const forest::ReplyForest f = ReadForestFile(in(Stage::kForest, "trees.jsonl"));
      const classify::ClusterAssignment merged =
          ReadAssignment(in(Stage::kClassify, "reply_assignment.csv"));
      const classify::ClusterAssignment event =
          ReadAssignment(in(Stage::kClassify, "event_assignment.csv"));
      const ingest::SeedSet seeds = ReadSeeds(in(Stage::kIngest, "seeds.tsv"));
      const stats::EngagementTable engagement = stats::ComputeEngagement(f, merged);
      const stats::EngagementTable first = stats::FirstOrderTable(f, merged);
      const stats::Participation participation =
          stats::ParticipationShare(event, stats::ReplyUsers(f), seeds);
      const stats::ParticipationTests tests = stats::TestParticipation(participation);
      const stats::InteractionMatrix matrix = stats::ComputeInteractionMatrix(f, merged);
      out.Write("engagement.csv",
                [&](std::ostream& o) { stats::WriteEngagementCsv(engagement, o); });
      out.Write("first_order.csv",
                [&](std::ostream& o) { stats::WriteEngagementCsv(first, o); });
      out.Write("participation.csv",
                [&](std::ostream& o) { stats::WriteParticipationCsv(participation, o); });
      out.Write("tests.csv", [&](std::ostream& o) { stats::WriteTestsCsv(tests, o); });
      out.Write("interaction_matrix.csv",
                [&](std::ostream& o) { stats::WriteInteractionCsv(matrix, o); });

      ordered_json part = ordered_json::object();
      for (int k = 0; k < classify::kKnownLabels; ++k) {
        const stats::ParticipationRow& row = participation.rows[k];
        part[std::string(classify::LabelName(static_cast<Label>(k)))] = {
            {"active", row.active},
            {"base", row.base},
            {"share", row.defined ? ordered_json(row.share) : ordered_json(nullptr)}};
      }
      ordered_json test_json;
      if (tests.chi_square) {
        ordered_json labels = ordered_json::array();
        for (Label l : tests.chi_labels) labels.push_back(classify::LabelName(l));
        test_json["chi_square"] = TestJson(*tests.chi_square);
        test_json["chi_square"]["groups"] = labels;
      } else {
        test_json["chi_square"] = nullptr;
      }
      test_json["pairwise"] = ordered_json::array();
      for (const auto& pair : tests.pairwise) {
        ordered_json t = TestJson(pair.z);
        t["first"] = classify::LabelName(pair.first);
        t["second"] = classify::LabelName(pair.second);
        test_json["pairwise"].push_back(t);
      }
      ordered_json interaction = ordered_json::object();
      for (int from = 0; from < classify::kKnownLabels; ++from) {
        ordered_json row;
        for (int to = 0; to < classify::kKnownLabels; ++to) {
          row[std::string(classify::LabelName(static_cast<Label>(to)))] = {
              {"count", matrix.counts[from][to]},
              {"share", NumberOrNull(matrix.share(static_cast<Label>(from),
                                                  static_cast<Label>(to)))}};
        }
        row["from_total"] = matrix.from_total[from];
        interaction[std::string(classify::LabelName(static_cast<Label>(from)))] = row;
      }
      const auto& maj = participation.row(Label::kMajority);
      const auto& min = participation.row(Label::kMinority);
      out.Json("summary.json",
               {{"engagement", EngagementJson(engagement)},
                {"first_order", EngagementJson(first)},
                {"participation", part},
                {"participation_ratio_minority_majority",
                 maj.defined && min.defined && maj.share > 0.0
                     ? ordered_json(min.share / maj.share)
                     : ordered_json(nullptr)},
                {"tests", test_json},
                {"interaction", interaction}});
      break;
    }

    case Stage::kReport:
      for (const auto& [name, content] :
           BuildReport([&](Stage s) { return StageDir(s); })) {
        out.Text(name, content);
      }
      break;
  }
  return out.names();
}

std::vector<std::string> WriteSyntheticCorpus(const fs::path& out_dir,
                                              std::string_view params_json,
                                              std::optional<std::uint64_t> seed) {
  synth::GeneratorParams params = params_json.empty()
                                      ? synth::PolarizedPreset(seed.value_or(1))
                                      : synth::ParamsFromJson(params_json);
  if (seed) params.seed = *seed;
  synth::ValidateParams(params);
  const synth::SynthCorpus corpus = synth::Generate(params);

  fs::create_directories(out_dir);
  Artifacts out(out_dir);
  out.Write("archive.jsonl",
            [&](std::ostream& o) { ingest::SerializeArchive(corpus.records, o); });
  out.Write("seeds.tsv", [&](std::ostream& o) { ingest::WriteSeedSet(corpus.seeds, o); });
  out.Write("truth.csv", [&](std::ostream& o) { synth::WriteTruthCsv(corpus, o); });
  out.Text("params.json", synth::ParamsToJson(params) + "\n");
  out.Text("filter.json", ingest::CorpusFilterToJson(corpus.filter) + "\n");
  ordered_json config = {{"archive", "archive.jsonl"},
                         {"seeds", "seeds.tsv"},
                         {"filter", "filter.json"},
                         {"reference_labels", "truth.csv"},
                         {"workspace", "workspace"},
                         {"seed", params.seed}};
  out.Json("config.json", config);
  const synth::GenerationTally& t = corpus.tally;
  out.Json("tally.json", {{"records", corpus.records.size()},
                          {"retweets", t.retweets},
                          {"originals", t.originals},
                          {"roots", t.roots},
                          {"replies", t.replies},
                          {"first_order", t.first_order},
                          {"reply_backs", t.reply_backs},
                          {"self_replies", t.self_replies},
                          {"redirected", t.redirected}});

  Manifest manifest;
  manifest.stage = "synth";
  manifest.parameters = ordered_json::parse(synth::ParamsToJson(params));
  for (const std::string& name : out.names()) {
    manifest.outputs[name] = Sha256File(out_dir / name);
  }
  manifest.created = CreationTimestamp();
  WriteFileAtomically(out_dir / kManifestFile,
                      [&](std::ostream& o) { o << ManifestToJson(manifest); });
  return out.names();
}

}  // namespace debatenet::pipeline
