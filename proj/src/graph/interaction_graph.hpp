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

#ifndef DEBATENET_GRAPH_INTERACTION_GRAPH_HPP_
#define DEBATENET_GRAPH_INTERACTION_GRAPH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet::graph {

using NodeIndex = std::uint32_t;
using Weight = std::uint64_t;
using Adjacency = std::map<NodeIndex, Weight>;

// Weighted directed graph over opaque user ids. Repeated interactions between
// the same ordered pair accumulate as edge weight; self-interactions are not
// stored but counted. Node indices follow insertion order.
class InteractionGraph {
 public:
  NodeIndex AddNode(std::string_view id);

  // Adds one interaction src -> dst. Returns false (and bumps the self-loop
  // tally) when src == dst.
  bool AddInteraction(std::string_view src, std::string_view dst) {
    return AddWeighted(src, dst, 1);
  }
  bool AddWeighted(std::string_view src, std::string_view dst, Weight weight);

  size_t node_count() const { return ids_.size(); }
  size_t edge_count() const { return edge_count_; }
  Weight total_weight() const { return total_weight_; }
  Weight self_loop_tally() const { return self_loops_; }
  bool empty() const { return ids_.empty(); }

  std::optional<NodeIndex> Find(std::string_view id) const;
  bool Contains(std::string_view id) const { return Find(id).has_value(); }
  const std::string& id(NodeIndex node) const { return ids_[node]; }
  const std::vector<std::string>& ids() const { return ids_; }

  const Adjacency& out_edges(NodeIndex node) const { return out_[node]; }
  const Adjacency& in_edges(NodeIndex node) const { return in_[node]; }
  Weight weight(NodeIndex src, NodeIndex dst) const;

  // Distinct neighbours in the undirected projection.
  size_t undirected_degree(NodeIndex node) const;

  Weight out_strength(NodeIndex node) const;
  Weight in_strength(NodeIndex node) const;

  // Equality on node id sets, edge sets and weights; node order and the
  // self-loop tally are ignored.
  bool SameStructure(const InteractionGraph& other) const;

 private:
  std::vector<std::string> ids_;
  std::map<std::string, NodeIndex, std::less<>> index_;
  std::vector<Adjacency> out_;
  std::vector<Adjacency> in_;
  size_t edge_count_ = 0;
  Weight total_weight_ = 0;
  Weight self_loops_ = 0;
};

struct ComponentLabeling {
  // component_of[node]; component 0 is the giant component.
  std::vector<std::uint32_t> component_of;
  std::vector<size_t> sizes;
};

// Weakly connected components, ordered by decreasing size with ties broken by
// the smallest node id they contain.
ComponentLabeling WeakComponents(const InteractionGraph& graph);

// Induced subgraph; node order follows the source graph.
InteractionGraph Restrict(const InteractionGraph& graph,
                          std::span<const std::string> keep);
InteractionGraph RestrictToMask(const InteractionGraph& graph,
                                const std::vector<bool>& keep);

InteractionGraph GiantComponent(const InteractionGraph& graph);

}  // namespace debatenet::graph

#endif  // DEBATENET_GRAPH_INTERACTION_GRAPH_HPP_
