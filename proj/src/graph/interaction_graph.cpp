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

#include "graph/interaction_graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace debatenet::graph {

NodeIndex InteractionGraph::AddNode(std::string_view id) {
  if (const auto it = index_.find(id); it != index_.end()) return it->second;
  const auto node = static_cast<NodeIndex>(ids_.size());
  ids_.emplace_back(id);
  index_.emplace(ids_.back(), node);
  out_.emplace_back();
  in_.emplace_back();
  return node;
}

bool InteractionGraph::AddWeighted(std::string_view src, std::string_view dst,
                                   Weight weight) {
  if (src == dst) {
    self_loops_ += weight;
    return false;
  }
  if (weight == 0) return true;
  const NodeIndex s = AddNode(src);
  const NodeIndex d = AddNode(dst);
  auto [it, inserted] = out_[s].try_emplace(d, 0);
  if (inserted) ++edge_count_;
  it->second += weight;
  in_[d][s] += weight;
  total_weight_ += weight;
  return true;
}

std::optional<NodeIndex> InteractionGraph::Find(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Weight InteractionGraph::weight(NodeIndex src, NodeIndex dst) const {
  const auto it = out_[src].find(dst);
  return it == out_[src].end() ? 0 : it->second;
}

size_t InteractionGraph::undirected_degree(NodeIndex node) const {
  size_t degree = out_[node].size();
  for (const auto& [other, w] : in_[node]) {
    if (out_[node].count(other) == 0) ++degree;
  }
  return degree;
}

Weight InteractionGraph::out_strength(NodeIndex node) const {
  Weight total = 0;
  for (const auto& [other, w] : out_[node]) total += w;
  return total;
}

Weight InteractionGraph::in_strength(NodeIndex node) const {
  Weight total = 0;
  for (const auto& [other, w] : in_[node]) total += w;
  return total;
}

bool InteractionGraph::SameStructure(const InteractionGraph& other) const {
  if (node_count() != other.node_count() ||
      edge_count() != other.edge_count() ||
      total_weight() != other.total_weight()) {
    return false;
  }
  for (NodeIndex u = 0; u < node_count(); ++u) {
    const auto mapped = other.Find(ids_[u]);
    if (!mapped) return false;
    const Adjacency& theirs = other.out_edges(*mapped);
    if (theirs.size() != out_[u].size()) return false;
    for (const auto& [v, w] : out_[u]) {
      const auto mv = other.Find(ids_[v]);
      if (!mv) return false;
      const auto it = theirs.find(*mv);
      if (it == theirs.end() || it->second != w) return false;
    }
  }
  return true;
}

ComponentLabeling WeakComponents(const InteractionGraph& graph) {
  const size_t n = graph.node_count();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> raw(n, kUnvisited);
  std::vector<size_t> raw_sizes;
  std::vector<NodeIndex> min_node;  // node with the smallest id per component
  std::vector<NodeIndex> stack;
  for (NodeIndex start = 0; start < n; ++start) {
    if (raw[start] != kUnvisited) continue;
    const auto label = static_cast<std::uint32_t>(raw_sizes.size());
    raw_sizes.push_back(0);
    min_node.push_back(start);
    raw[start] = label;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeIndex u = stack.back();
      stack.pop_back();
      ++raw_sizes[label];
      if (graph.id(u) < graph.id(min_node[label])) min_node[label] = u;
      auto visit = [&](const Adjacency& adj) {
        for (const auto& [v, w] : adj) {
          if (raw[v] == kUnvisited) {
            raw[v] = label;
            stack.push_back(v);
          }
        }
      };
      visit(graph.out_edges(u));
      visit(graph.in_edges(u));
    }
  }

  std::vector<std::uint32_t> order(raw_sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (raw_sizes[a] != raw_sizes[b]) return raw_sizes[a] > raw_sizes[b];
    return graph.id(min_node[a]) < graph.id(min_node[b]);
  });
  std::vector<std::uint32_t> rank(order.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  ComponentLabeling labeling;
  labeling.component_of.resize(n);
  labeling.sizes.resize(order.size());
  for (NodeIndex u = 0; u < n; ++u) labeling.component_of[u] = rank[raw[u]];
  for (std::uint32_t c = 0; c < order.size(); ++c) {
    labeling.sizes[rank[c]] = raw_sizes[c];
  }
  return labeling;
}

InteractionGraph RestrictToMask(const InteractionGraph& graph,
                                const std::vector<bool>& keep) {
  InteractionGraph sub;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (keep[u]) sub.AddNode(graph.id(u));
  }
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (!keep[u]) continue;
    for (const auto& [v, w] : graph.out_edges(u)) {
      if (keep[v]) sub.AddWeighted(graph.id(u), graph.id(v), w);
    }
  }
  return sub;
}

InteractionGraph Restrict(const InteractionGraph& graph,
                          std::span<const std::string> keep) {
  std::vector<bool> mask(graph.node_count(), false);
  for (const auto& id : keep) {
    if (const auto node = graph.Find(id)) mask[*node] = true;
  }
  return RestrictToMask(graph, mask);
}

InteractionGraph GiantComponent(const InteractionGraph& graph) {
  const ComponentLabeling labeling = WeakComponents(graph);
  std::vector<bool> mask(graph.node_count());
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    mask[u] = labeling.component_of[u] == 0;
  }
  return RestrictToMask(graph, mask);
}

}  // namespace debatenet::graph
