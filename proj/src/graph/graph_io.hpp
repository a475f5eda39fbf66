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

#ifndef DEBATENET_GRAPH_GRAPH_IO_HPP_
#define DEBATENET_GRAPH_GRAPH_IO_HPP_

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include "graph/interaction_graph.hpp"
#include "ingest/record.hpp"

namespace debatenet::graph {

// Edge list: "src<TAB>dst<TAB>weight" per edge, UTF-8. Nodes without any
// edge are written as a line holding only the id so restrictions round-trip.
void WriteEdgeList(const InteractionGraph& graph, std::ostream& out);
InteractionGraph ReadEdgeList(std::istream& in);

struct GraphmlAttributes {
  std::map<std::string, std::string> cluster;
  std::map<std::string, std::pair<double, double>> position;
};

void WriteGraphml(const InteractionGraph& graph, std::ostream& out,
                  const GraphmlAttributes& attributes = {});

// Retweet network: one unit of weight from retweeter to retweeted author per
// retweet record.
InteractionGraph BuildRetweetNetwork(
    std::span<const ingest::InteractionRecord> records);

}  // namespace debatenet::graph

#endif  // DEBATENET_GRAPH_GRAPH_IO_HPP_
