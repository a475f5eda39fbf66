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

#include "graph/graph_io.hpp"

#include <charconv>

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/text.hpp"

namespace debatenet::graph {

void WriteEdgeList(const InteractionGraph& graph, std::ostream& out) {
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (graph.out_edges(u).empty() && graph.in_edges(u).empty()) {
      out << graph.id(u) << '\n';
    }
    for (const auto& [v, w] : graph.out_edges(u)) {
      out << graph.id(u) << '\t' << graph.id(v) << '\t' << w << '\n';
    }
  }
}

InteractionGraph ReadEdgeList(std::istream& in) {
  InteractionGraph graph;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string> fields = SplitString(line, '\t');
    if (fields.size() == 1) {
      graph.AddNode(fields[0]);
      continue;
    }
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorCode::kParse,
                  fmt::format("edge list line {}: expected src<TAB>dst<TAB>"
                              "weight",
                              line_no));
    }
    Weight weight = 0;
    const auto& wtext = fields[2];
    const auto result =
        std::from_chars(wtext.data(), wtext.data() + wtext.size(), weight);
    if (result.ec != std::errc() || result.ptr != wtext.data() + wtext.size() ||
        weight == 0) {
      throw Error(ErrorCode::kParse,
                  fmt::format("edge list line {}: weight must be a positive "
                              "integer",
                              line_no));
    }
    graph.AddWeighted(fields[0], fields[1], weight);
  }
  return graph;
}

namespace {

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void WriteGraphml(const InteractionGraph& graph, std::ostream& out,
                  const GraphmlAttributes& attributes) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"long\"/>\n";
  const bool with_cluster = !attributes.cluster.empty();
  const bool with_position = !attributes.position.empty();
  if (with_cluster) {
    out << "  <key id=\"cluster\" for=\"node\" attr.name=\"cluster\" "
           "attr.type=\"string\"/>\n";
  }
  if (with_position) {
    out << "  <key id=\"x\" for=\"node\" attr.name=\"x\" "
           "attr.type=\"double\"/>\n"
           "  <key id=\"y\" for=\"node\" attr.name=\"y\" "
           "attr.type=\"double\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    const std::string& id = graph.id(u);
    out << "    <node id=\"" << XmlEscape(id) << "\">";
    if (const auto it = attributes.cluster.find(id);
        it != attributes.cluster.end()) {
      out << "<data key=\"cluster\">" << XmlEscape(it->second) << "</data>";
    }
    if (const auto it = attributes.position.find(id);
        it != attributes.position.end()) {
      out << "<data key=\"x\">" << FormatDouble(it->second.first)
          << "</data><data key=\"y\">" << FormatDouble(it->second.second)
          << "</data>";
    }
    out << "</node>\n";
  }
  size_t edge_no = 0;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    for (const auto& [v, w] : graph.out_edges(u)) {
      out << "    <edge id=\"e" << edge_no++ << "\" source=\""
          << XmlEscape(graph.id(u)) << "\" target=\"" << XmlEscape(graph.id(v))
          << "\"><data key=\"weight\">" << w << "</data></edge>\n";
    }
  }
  out << "  </graph>\n</graphml>\n";
}

InteractionGraph BuildRetweetNetwork(
    std::span<const ingest::InteractionRecord> records) {
  InteractionGraph graph;
  for (const auto& record : records) {
    if (record.kind != ingest::RecordKind::kRetweet) continue;
    graph.AddInteraction(record.author_id, *record.ref_user_id);
  }
  return graph;
}

}  // namespace debatenet::graph
