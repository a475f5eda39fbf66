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

#include "pipeline/config.hpp"

#include <cstdlib>
#include <set>
#include <vector>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/files.hpp"

namespace debatenet::pipeline {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Collects field-level problems so one failed load reports all of them.
class FieldReader {
 public:
  FieldReader(const json& root, const fs::path& base) : root_(root), base_(base) {}

  const json* Find(const json& obj, const std::string& field) {
    auto it = obj.find(field);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  template <typename T>
  void Get(const json& obj, const std::string& prefix, const std::string& key,
           T& out) {
    const json* value = Find(obj, key);
    if (value == nullptr) return;
    try {
      out = value->get<T>();
    } catch (const json::exception&) {
      Fail(prefix + key, fmt::format("wrong type ({})", value->type_name()));
    }
  }

  void Path(const json& obj, const std::string& prefix, const std::string& key,
            std::optional<fs::path>& out) {
    const json* value = Find(obj, key);
    if (value == nullptr) return;
    if (!value->is_string() || value->get<std::string>().empty()) {
      Fail(prefix + key, "expected a non-empty path string");
      return;
    }
    out = Resolve(value->get<std::string>());
  }

  fs::path Resolve(const std::string& text) const {
    fs::path p(text);
    if (p.is_relative()) p = base_ / p;
    return p.lexically_normal();
  }

  void Known(const json& obj, const std::string& prefix,
             const std::set<std::string>& keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (keys.count(it.key()) == 0) Fail(prefix + it.key(), "unknown field");
    }
  }

  void Fail(const std::string& field, const std::string& message) {
    problems_.push_back(fmt::format("{}: {}", field, message));
  }

  const std::vector<std::string>& problems() const { return problems_; }
  const json& root() const { return root_; }

 private:
  const json& root_;
  fs::path base_;
  std::vector<std::string> problems_;
};

void ThrowIfAny(const std::vector<std::string>& problems) {
  if (problems.empty()) return;
  std::string message = "invalid config:";
  for (const std::string& p : problems) message += "\n  " + p;
  throw Error(ErrorCode::kInvalidArgument, message);
}

const char* WalkName(assort::WalkGraph walk) {
  return walk == assort::WalkGraph::kUndirected ? "undirected" : "directed";
}

}  // namespace

PipelineConfig ParseConfig(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("invalid config: not valid JSON ({})", e.what()));
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid config: top level must be an object");
  }
  PipelineConfig config;
  FieldReader r(root, base_dir);
  r.Known(root, "",
          {"archive", "seeds", "fallback_archive", "boundaries",
           "reference_labels", "workspace", "filter", "strict", "quotes",
           "snowball", "layout", "assort", "audit_sample", "threads", "seed"});

  std::optional<fs::path> path;
  r.Path(root, "", "archive", path);
  if (path) config.archive = *path; else r.Fail("archive", "required");
  path.reset();
  r.Path(root, "", "seeds", path);
  if (path) config.seeds = *path; else r.Fail("seeds", "required");
  r.Path(root, "", "fallback_archive", config.fallback_archive);
  r.Path(root, "", "reference_labels", config.reference_labels);
  if (const json* b = r.Find(root, "boundaries")) {
    if (b->is_object()) {
      r.Known(*b, "boundaries.", {"event", "fallback"});
      r.Path(*b, "boundaries.", "event", config.boundaries_event);
      r.Path(*b, "boundaries.", "fallback", config.boundaries_fallback);
    } else {
      r.Fail("boundaries", "expected an object with event/fallback paths");
    }
  }

  path.reset();
  r.Path(root, "", "workspace", path);
  if (path) {
    config.workspace = *path;
  } else if (const char* env = std::getenv(kWorkspaceEnv); env && *env) {
    config.workspace = fs::path(env).lexically_normal();
  } else {
    config.workspace = (base_dir / "workspace").lexically_normal();
  }

  if (const json* f = r.Find(root, "filter")) {
    try {
      if (f->is_string()) {
        config.filter =
            ingest::ParseCorpusFilter(ReadFile(r.Resolve(f->get<std::string>())));
      } else if (f->is_object()) {
        config.filter = ingest::ParseCorpusFilter(f->dump());
      } else {
        r.Fail("filter", "expected an object or a path");
      }
    } catch (const Error& e) {
      r.Fail("filter", e.what());
    }
  } else {
    r.Fail("filter", "required (window_start, window_end, keywords)");
  }

  r.Get(root, "", "strict", config.strict);
  std::string quotes = "retweet";
  r.Get(root, "", "quotes", quotes);
  if (quotes == "retweet") {
    config.quotes = ingest::QuoteMapping::kAsRetweet;
  } else if (quotes == "drop") {
    config.quotes = ingest::QuoteMapping::kDrop;
  } else {
    r.Fail("quotes", fmt::format("expected 'retweet' or 'drop', got '{}'", quotes));
  }

  if (const json* s = r.Find(root, "snowball")) {
    r.Known(*s, "snowball.", {"rounds", "min_weekly_rate"});
    r.Get(*s, "snowball.", "rounds", config.snowball.rounds);
    r.Get(*s, "snowball.", "min_weekly_rate", config.snowball.min_weekly_rate);
  }

  if (const json* l = r.Find(root, "layout")) {
    r.Known(*l, "layout.",
            {"repulsion", "gravity", "iterations", "jitter_tolerance", "linlog",
             "edge_weight_influence", "theta", "repulsion_method",
             "barnes_hut_threshold", "initial_extent"});
    layout::LayoutParams& p = config.layout;
    r.Get(*l, "layout.", "repulsion", p.repulsion);
    r.Get(*l, "layout.", "gravity", p.gravity);
    r.Get(*l, "layout.", "iterations", p.iterations);
    r.Get(*l, "layout.", "jitter_tolerance", p.jitter_tolerance);
    r.Get(*l, "layout.", "linlog", p.linlog);
    r.Get(*l, "layout.", "edge_weight_influence", p.edge_weight_influence);
    r.Get(*l, "layout.", "theta", p.theta);
    r.Get(*l, "layout.", "barnes_hut_threshold", p.barnes_hut_threshold);
    r.Get(*l, "layout.", "initial_extent", p.initial_extent);
    std::string method = "auto";
    r.Get(*l, "layout.", "repulsion_method", method);
    if (method == "auto") {
      p.repulsion_method = layout::RepulsionMethod::kAuto;
    } else if (method == "exact") {
      p.repulsion_method = layout::RepulsionMethod::kExact;
    } else if (method == "barnes_hut") {
      p.repulsion_method = layout::RepulsionMethod::kBarnesHut;
    } else {
      r.Fail("layout.repulsion_method", "expected auto, exact or barnes_hut");
    }
  }

  if (const json* a = r.Find(root, "assort")) {
    r.Known(*a, "assort.",
            {"damping", "tolerance", "max_iterations", "walk", "weighted", "bins"});
    r.Get(*a, "assort.", "damping", config.ppr.damping);
    r.Get(*a, "assort.", "tolerance", config.ppr.tolerance);
    r.Get(*a, "assort.", "max_iterations", config.ppr.max_iterations);
    r.Get(*a, "assort.", "weighted", config.ppr.weighted);
    r.Get(*a, "assort.", "bins", config.bins);
    std::string walk = "undirected";
    r.Get(*a, "assort.", "walk", walk);
    if (walk == "undirected") {
      config.ppr.walk = assort::WalkGraph::kUndirected;
    } else if (walk == "directed") {
      config.ppr.walk = assort::WalkGraph::kDirected;
    } else {
      r.Fail("assort.walk", "expected 'undirected' or 'directed'");
    }
  }

  r.Get(root, "", "audit_sample", config.audit_sample);
  r.Get(root, "", "threads", config.threads);
  r.Get(root, "", "seed", config.seed);
  ThrowIfAny(r.problems());
  return config;
}

PipelineConfig LoadConfig(const fs::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error&) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("cannot read config file '{}'", path.string()));
  }
  const fs::path absolute = fs::absolute(path).lexically_normal();
  PipelineConfig config = ParseConfig(text, absolute.parent_path());
  config.source = absolute;
  return config;
}

void ValidateConfig(const PipelineConfig& config) {
  std::vector<std::string> problems;
  auto require_file = [&](const char* field, const std::optional<fs::path>& p) {
    if (p && !fs::is_regular_file(*p)) {
      problems.push_back(fmt::format("{}: file '{}' not found", field, p->string()));
    }
  };
  require_file("archive", config.archive);
  require_file("seeds", config.seeds);
  require_file("fallback_archive", config.fallback_archive);
  require_file("boundaries.event", config.boundaries_event);
  require_file("boundaries.fallback", config.boundaries_fallback);
  require_file("reference_labels", config.reference_labels);
  if (config.workspace.empty()) problems.push_back("workspace: empty path");
  try {
    ingest::ValidateCorpusFilter(config.filter);
  } catch (const Error& e) {
    problems.push_back(fmt::format("filter: {}", e.what()));
  }
  if (config.snowball.rounds < 0) problems.push_back("snowball.rounds: must be >= 0");
  if (!(config.snowball.min_weekly_rate > 0.0)) {
    problems.push_back("snowball.min_weekly_rate: must be positive");
  }
  try {
    layout::ValidateLayoutParams(config.layout);
  } catch (const Error& e) {
    problems.push_back(fmt::format("layout: {}", e.what()));
  }
  try {
    assort::ValidatePprOptions(config.ppr);
  } catch (const Error& e) {
    problems.push_back(fmt::format("assort: {}", e.what()));
  }
  if (config.bins == 0) problems.push_back("assort.bins: must be positive");
  if (config.threads < 1) problems.push_back("threads: must be >= 1");
  ThrowIfAny(problems);
}

ordered_json ConfigToJson(const PipelineConfig& config) {
  auto opt = [](const std::optional<fs::path>& p) -> ordered_json {
    return p ? ordered_json(p->string()) : ordered_json(nullptr);
  };
  ordered_json out;
  out["archive"] = config.archive.string();
  out["seeds"] = config.seeds.string();
  out["fallback_archive"] = opt(config.fallback_archive);
  out["boundaries"] = {{"event", opt(config.boundaries_event)},
                       {"fallback", opt(config.boundaries_fallback)}};
  out["reference_labels"] = opt(config.reference_labels);
  out["workspace"] = config.workspace.string();
  out["filter"] = ordered_json::parse(ingest::CorpusFilterToJson(config.filter));
  out["strict"] = config.strict;
  out["quotes"] =
      config.quotes == ingest::QuoteMapping::kAsRetweet ? "retweet" : "drop";
  out["snowball"] = {{"rounds", config.snowball.rounds},
                     {"min_weekly_rate", config.snowball.min_weekly_rate}};
  const layout::LayoutParams& p = config.layout;
  const char* method = p.repulsion_method == layout::RepulsionMethod::kAuto
                           ? "auto"
                           : p.repulsion_method == layout::RepulsionMethod::kExact
                                 ? "exact"
                                 : "barnes_hut";
  out["layout"] = {{"repulsion", p.repulsion},
                   {"gravity", p.gravity},
                   {"iterations", p.iterations},
                   {"jitter_tolerance", p.jitter_tolerance},
                   {"linlog", p.linlog},
                   {"edge_weight_influence", p.edge_weight_influence},
                   {"theta", p.theta},
                   {"repulsion_method", method},
                   {"barnes_hut_threshold", p.barnes_hut_threshold},
                   {"initial_extent", p.initial_extent}};
  out["assort"] = {{"damping", config.ppr.damping},
                   {"tolerance", config.ppr.tolerance},
                   {"max_iterations", config.ppr.max_iterations},
                   {"walk", WalkName(config.ppr.walk)},
                   {"weighted", config.ppr.weighted},
                   {"bins", config.bins}};
  out["audit_sample"] = config.audit_sample;
  out["threads"] = config.threads;
  out["seed"] = config.seed;
  return out;
}

}  // namespace debatenet::pipeline
