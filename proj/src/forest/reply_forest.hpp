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

#ifndef DEBATENET_FOREST_REPLY_FOREST_HPP_
#define DEBATENET_FOREST_REPLY_FOREST_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graph/interaction_graph.hpp"
#include "ingest/record.hpp"

namespace debatenet::forest {

struct TreeNode {
  std::string tweet_id;
  std::string author_id;
  std::int64_t created_at = 0;
  std::int32_t parent = -1;  // index into ReplyTree::nodes, -1 for the root
  std::uint32_t depth = 0;
  std::vector<std::uint32_t> children;  // ordered by (created_at, tweet_id)
};

// A seed-authored original post and every reply that transitively answers
// it. nodes[0] is the root; nodes are stored in breadth-first order.
struct ReplyTree {
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
  const std::string& id() const { return nodes.front().tweet_id; }
};

struct ForestTally {
  // Replies whose direct parent is not in the corpus.
  size_t orphans = 0;
  // Replies below an orphan.
  size_t detached = 0;
  // Replies whose thread starts at a post that is not a tree root (non-seed
  // original, retweet, or a filtered-out root).
  size_t outside = 0;
  // Replies older than their parent; dropped with their subtree.
  size_t timestamp_violations = 0;
  size_t dropped_descendants = 0;
  // Replies on a reference cycle.
  size_t cyclic = 0;
  // Duplicate tweet ids ignored in lenient mode.
  size_t duplicates = 0;

  bool operator==(const ForestTally&) const = default;
};

struct ReplyForest {
  std::vector<ReplyTree> trees;  // ordered by root tweet id
  ForestTally tally;
};

// Two-pass build: index every record, then attach replies through parent
// pointers, so the result does not depend on input order. Roots are
// seed-authored originals. Duplicate ids throw Error(kData) when strict.
ReplyForest BuildForest(std::span<const ingest::InteractionRecord> records,
                        const ingest::SeedSet& seeds, bool strict = false);

struct TreeMetrics {
  std::uint64_t size = 0;         // tweets including the root
  std::uint64_t depth = 0;        // edges on the longest root-to-leaf path
  std::uint64_t first_order = 0;  // direct replies to the root

  std::uint64_t reply_count() const { return size - 1; }
  bool operator==(const TreeMetrics&) const = default;
};

TreeMetrics ComputeTreeMetrics(const ReplyTree& tree);

struct CcdfPoint {
  std::uint64_t threshold = 0;
  double fraction = 0.0;  // share of values >= threshold

  bool operator==(const CcdfPoint&) const = default;
};

// One point per distinct value. Throws Error(kInvalidArgument) when empty.
std::vector<CcdfPoint> Ccdf(std::span<const std::uint64_t> values);

// Directed edge from each reply author to the author of its parent,
// accumulated over trees in root-id order. Self-replies land in the graph's
// self-loop tally.
graph::InteractionGraph AggregateReplyNetwork(const ReplyForest& forest);

}  // namespace debatenet::forest

#endif  // DEBATENET_FOREST_REPLY_FOREST_HPP_
