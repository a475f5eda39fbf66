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

#include "debatenet/debatenet.h"

#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "assort/assortativity.hpp"
#include "classify/clusters.hpp"
#include "common/csv.hpp"
#include "common/error.hpp"
#include "graph/graph_io.hpp"
#include "graph/interaction_graph.hpp"
#include "pipeline/pipeline.hpp"
#include "stats/tables.hpp"

struct dn_pipeline {
  std::unique_ptr<debatenet::pipeline::Pipeline> impl;
  std::string directory;
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;
};

struct dn_graph {
  debatenet::graph::InteractionGraph impl;
};

struct dn_labels {
  debatenet::classify::ClusterAssignment impl;
};

namespace {

using debatenet::Error;
using debatenet::ErrorCode;

thread_local std::string g_last_error;

dn_status FromCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return DN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse:
      return DN_ERR_PARSE;
    case ErrorCode::kIo:
      return DN_ERR_IO;
    case ErrorCode::kData:
      return DN_ERR_DATA;
    case ErrorCode::kNumeric:
      return DN_ERR_NUMERIC;
    case ErrorCode::kConvergence:
      return DN_ERR_CONVERGENCE;
    case ErrorCode::kDependency:
      return DN_ERR_DEPENDENCY;
    case ErrorCode::kStale:
      return DN_ERR_STALE;
  }
  return DN_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
dn_status Guard(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return DN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return FromCode(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return DN_ERR_INTERNAL;
  }
}

void Require(bool condition, const char* message) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, message);
}

debatenet::assort::PprOptions ToOptions(const dn_ppr_options* options) {
  debatenet::assort::PprOptions out;
  if (options != nullptr) {
    out.damping = options->damping;
    out.tolerance = options->tolerance;
    out.max_iterations = options->max_iterations;
    out.walk = options->directed ? debatenet::assort::WalkGraph::kDirected
                                 : debatenet::assort::WalkGraph::kUndirected;
    out.weighted = options->weighted != 0;
  }
  return out;
}

debatenet::graph::NodeIndex FocalIndex(const dn_graph* graph, const char* focal) {
  Require(focal != nullptr, "focal node id is NULL");
  const auto index = graph->impl.Find(focal);
  if (!index) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("focal node '") + focal + "' is not in the graph");
  }
  return *index;
}

}  // namespace

extern "C" {

const char* dn_version(void) { return debatenet::pipeline::kToolVersion; }

const char* dn_status_name(dn_status status) {
  switch (status) {
    case DN_OK:
      return "ok";
    case DN_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case DN_ERR_PARSE:
      return "parse error";
    case DN_ERR_IO:
      return "i/o error";
    case DN_ERR_DATA:
      return "data error";
    case DN_ERR_NUMERIC:
      return "numeric error";
    case DN_ERR_CONVERGENCE:
      return "convergence failure";
    case DN_ERR_DEPENDENCY:
      return "missing dependency";
    case DN_ERR_STALE:
      return "stale artifacts";
    case DN_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* dn_last_error(void) { return g_last_error.c_str(); }

int dn_exit_code(dn_status status) {
  switch (status) {
    case DN_OK:
      return 0;
    case DN_ERR_INVALID_ARGUMENT:
    case DN_ERR_DEPENDENCY:
    case DN_ERR_STALE:
      return 2;
    default:
      return 1;
  }
}

void dn_pipeline_options_init(dn_pipeline_options* options) {
  if (options == nullptr) return;
  options->workspace = nullptr;
  options->threads = 0;
  options->has_seed = 0;
  options->seed = 0;
  options->strict = -1;
}

dn_status dn_pipeline_open(const char* config_path,
                           const dn_pipeline_options* options, dn_pipeline** out) {
  return Guard([&] {
    Require(config_path != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    debatenet::pipeline::PipelineConfig config =
        debatenet::pipeline::LoadConfig(config_path);
    if (options != nullptr) {
      if (options->workspace != nullptr && *options->workspace != '\0') {
        config.workspace =
            std::filesystem::absolute(options->workspace).lexically_normal();
      }
      if (options->threads < 0) {
        throw Error(ErrorCode::kInvalidArgument, "threads: must be >= 1");
      }
      if (options->threads > 0) config.threads = options->threads;
      if (options->has_seed) config.seed = options->seed;
      if (options->strict >= 0) config.strict = options->strict != 0;
    }
    auto handle = std::make_unique<dn_pipeline>();
    handle->impl = std::make_unique<debatenet::pipeline::Pipeline>(std::move(config));
    *out = handle.release();
  });
}

void dn_pipeline_close(dn_pipeline* pipeline) { delete pipeline; }

size_t dn_stage_count(void) { return debatenet::pipeline::kStageOrder.size(); }

const char* dn_stage_name(size_t index) {
  if (index >= debatenet::pipeline::kStageOrder.size()) return nullptr;
  return debatenet::pipeline::StageName(debatenet::pipeline::kStageOrder[index]).data();
}

dn_status dn_pipeline_run(dn_pipeline* pipeline, const char* stage, int force,
                          int* skipped) {
  return Guard([&] {
    Require(pipeline != nullptr && stage != nullptr, "NULL argument");
    const auto parsed = debatenet::pipeline::ParseStage(stage);
    if (!parsed) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("unknown stage '") + stage + "'");
    }
    pipeline->directory.clear();
    pipeline->artifacts.clear();
    pipeline->notes.clear();
    debatenet::pipeline::RunOptions options;
    options.force = force != 0;
    const debatenet::pipeline::StageOutcome outcome =
        pipeline->impl->Run(*parsed, options);
    pipeline->directory = outcome.directory.string();
    pipeline->artifacts = outcome.artifacts;
    pipeline->notes = outcome.notes;
    if (skipped != nullptr) *skipped = outcome.skipped ? 1 : 0;
  });
}

const char* dn_pipeline_last_directory(const dn_pipeline* pipeline) {
  return pipeline == nullptr ? "" : pipeline->directory.c_str();
}

size_t dn_pipeline_artifact_count(const dn_pipeline* pipeline) {
  return pipeline == nullptr ? 0 : pipeline->artifacts.size();
}

const char* dn_pipeline_artifact(const dn_pipeline* pipeline, size_t index) {
  if (pipeline == nullptr || index >= pipeline->artifacts.size()) return nullptr;
  return pipeline->artifacts[index].c_str();
}

size_t dn_pipeline_note_count(const dn_pipeline* pipeline) {
  return pipeline == nullptr ? 0 : pipeline->notes.size();
}

const char* dn_pipeline_note(const dn_pipeline* pipeline, size_t index) {
  if (pipeline == nullptr || index >= pipeline->notes.size()) return nullptr;
  return pipeline->notes[index].c_str();
}

dn_status dn_synth_write(const char* out_dir, const char* params_json,
                         int has_seed, uint64_t seed) {
  return Guard([&] {
    Require(out_dir != nullptr && *out_dir != '\0', "output directory is empty");
    std::optional<std::uint64_t> override_seed;
    if (has_seed) override_seed = seed;
    debatenet::pipeline::WriteSyntheticCorpus(
        out_dir, params_json == nullptr ? "" : params_json, override_seed);
  });
}

dn_status dn_graph_create(dn_graph** out) {
  return Guard([&] {
    Require(out != nullptr, "NULL argument");
    *out = new dn_graph();
  });
}

dn_status dn_graph_read_edge_list(const char* path, dn_graph** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "'");
    auto graph = std::make_unique<dn_graph>();
    graph->impl = debatenet::graph::ReadEdgeList(in);
    *out = graph.release();
  });
}

void dn_graph_destroy(dn_graph* graph) { delete graph; }

dn_status dn_graph_add_interaction(dn_graph* graph, const char* src,
                                   const char* dst, uint64_t weight) {
  return Guard([&] {
    Require(graph != nullptr && src != nullptr && dst != nullptr, "NULL argument");
    Require(weight > 0, "weight must be positive");
    graph->impl.AddWeighted(src, dst, weight);
  });
}

size_t dn_graph_node_count(const dn_graph* graph) {
  return graph == nullptr ? 0 : graph->impl.node_count();
}

size_t dn_graph_edge_count(const dn_graph* graph) {
  return graph == nullptr ? 0 : graph->impl.edge_count();
}

const char* dn_graph_node_id(const dn_graph* graph, size_t index) {
  if (graph == nullptr || index >= graph->impl.node_count()) return nullptr;
  return graph->impl.id(static_cast<debatenet::graph::NodeIndex>(index)).c_str();
}

dn_status dn_labels_create(dn_labels** out) {
  return Guard([&] {
    Require(out != nullptr, "NULL argument");
    *out = new dn_labels();
  });
}

dn_status dn_labels_read_csv(const char* path, dn_labels** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "'");
    auto labels = std::make_unique<dn_labels>();
    std::vector<std::string> row;
    if (!debatenet::ReadCsvRow(in, row) || row.size() < 2 || row[0] != "user_id") {
      throw Error(ErrorCode::kParse, "expected a user_id,label header");
    }
    size_t line = 1;
    while (debatenet::ReadCsvRow(in, row)) {
      ++line;
      if (row.size() == 1 && row[0].empty()) continue;
      if (row.size() < 2) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": too few fields");
      }
      const auto label = debatenet::classify::ParseLabel(row[1]);
      labels->impl.Set(row[0], label,
                       label == debatenet::classify::Label::kUnclassified
                           ? debatenet::classify::Provenance::kNone
                           : debatenet::classify::Provenance::kEventNetwork);
    }
    *out = labels.release();
  });
}

void dn_labels_destroy(dn_labels* labels) { delete labels; }

dn_status dn_labels_set(dn_labels* labels, const char* user, dn_label label) {
  return Guard([&] {
    Require(labels != nullptr && user != nullptr, "NULL argument");
    Require(label >= DN_LABEL_MAJORITY && label <= DN_LABEL_UNCLASSIFIED,
            "label out of range");
    const auto l = static_cast<debatenet::classify::Label>(label);
    labels->impl.Set(user, l,
                     l == debatenet::classify::Label::kUnclassified
                         ? debatenet::classify::Provenance::kNone
                         : debatenet::classify::Provenance::kEventNetwork);
  });
}

dn_label dn_labels_get(const dn_labels* labels, const char* user) {
  if (labels == nullptr || user == nullptr) return DN_LABEL_UNCLASSIFIED;
  return static_cast<dn_label>(labels->impl.LabelOf(user));
}

void dn_ppr_options_init(dn_ppr_options* options) {
  if (options == nullptr) return;
  const debatenet::assort::PprOptions defaults;
  options->damping = defaults.damping;
  options->tolerance = defaults.tolerance;
  options->max_iterations = defaults.max_iterations;
  options->directed = 0;
  options->weighted = 0;
}

dn_status dn_personalized_pagerank(const dn_graph* graph, const char* focal,
                                   const dn_ppr_options* options, double* weights) {
  return Guard([&] {
    Require(graph != nullptr && weights != nullptr, "NULL argument");
    const std::vector<double> w = debatenet::assort::PersonalizedPageRank(
        graph->impl, FocalIndex(graph, focal), ToOptions(options));
    std::copy(w.begin(), w.end(), weights);
  });
}

dn_status dn_global_assortativity(const dn_graph* graph, const dn_labels* labels,
                                  double* r, int* single_group) {
  return Guard([&] {
    Require(graph != nullptr && labels != nullptr && r != nullptr, "NULL argument");
    const auto result = debatenet::assort::GlobalAssortativity(graph->impl, labels->impl);
    *r = result.r;
    if (single_group != nullptr) *single_group = result.single_group ? 1 : 0;
  });
}

dn_status dn_local_assortativity(const dn_graph* graph, const dn_labels* labels,
                                 const char* focal, const dn_ppr_options* options,
                                 double* r, double* z, int* flagged) {
  return Guard([&] {
    Require(graph != nullptr && labels != nullptr && r != nullptr && z != nullptr,
            "NULL argument");
    const std::vector<int> groups = debatenet::assort::NodeGroups(graph->impl, labels->impl);
    const auto result = debatenet::assort::LocalAssortativity(
        graph->impl, groups, FocalIndex(graph, focal), ToOptions(options));
    *r = result.r;
    *z = result.z;
    if (flagged != nullptr) *flagged = result.flagged ? 1 : 0;
  });
}

dn_status dn_chi_square(const double* table, size_t rows, size_t cols,
                        double* statistic, int* df, double* p_value) {
  return Guard([&] {
    Require(table != nullptr && statistic != nullptr, "NULL argument");
    std::vector<std::vector<double>> t(rows, std::vector<double>(cols));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) t[i][j] = table[i * cols + j];
    }
    const auto result = debatenet::stats::ChiSquare(t);
    *statistic = result.statistic;
    if (df != nullptr) *df = result.df;
    if (p_value != nullptr) *p_value = result.p_value;
  });
}

dn_status dn_two_proportion_z(uint64_t k1, uint64_t n1, uint64_t k2, uint64_t n2,
                              double* z, double* p_value) {
  return Guard([&] {
    Require(z != nullptr, "NULL argument");
    const auto result = debatenet::stats::TwoProportionZ(k1, n1, k2, n2);
    *z = result.statistic;
    if (p_value != nullptr) *p_value = result.p_value;
  });
}

}  // extern "C"
