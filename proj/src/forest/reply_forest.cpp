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

#include "forest/reply_forest.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "common/error.hpp"

namespace debatenet::forest {

using ingest::InteractionRecord;
using ingest::RecordKind;

namespace {

enum class Resolution : std::uint8_t {
  kUnknown,
  kInProgress,
  kAttached,
  kOrphan,
  kDetached,
  kOutside,
  kCyclic,
};

}  // namespace

ReplyForest BuildForest(std::span<const InteractionRecord> records,
                        const ingest::SeedSet& seeds, bool strict) {
  ReplyForest forest;

  // Pass 1: index. Among duplicates the lexicographically smallest
  // serialization wins, which keeps lenient builds order independent.
  std::unordered_map<std::string, size_t> by_id;
  by_id.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    auto [it, inserted] = by_id.try_emplace(records[i].tweet_id, i);
    if (inserted) continue;
    if (strict) {
      throw Error(ErrorCode::kData,
                  fmt::format("duplicate tweet id '{}'", records[i].tweet_id));
    }
    ++forest.tally.duplicates;
    const InteractionRecord& kept = records[it->second];
    const InteractionRecord& other = records[i];
    if (std::tie(other.created_at, other.author_id, other.text) <
        std::tie(kept.created_at, kept.author_id, kept.text)) {
      it->second = i;
    }
  }

  auto is_root = [&](const InteractionRecord& r) {
    return r.kind == RecordKind::kOriginal && seeds.Contains(r.author_id);
  };

  // Pass 2: resolve each reply to its root through parent pointers.
  std::vector<Resolution> state(records.size(), Resolution::kUnknown);
  std::vector<size_t> root_of(records.size(), SIZE_MAX);
  std::vector<size_t> chain;
  for (const auto& [id, start] : by_id) {
    if (records[start].kind != RecordKind::kReply ||
        state[start] != Resolution::kUnknown) {
      continue;
    }
    chain.clear();
    size_t cur = start;
    Resolution outcome = Resolution::kUnknown;
    size_t root = SIZE_MAX;
    while (true) {
      const InteractionRecord& r = records[cur];
      if (state[cur] == Resolution::kInProgress) {
        outcome = Resolution::kCyclic;
        break;
      }
      if (state[cur] != Resolution::kUnknown) {
        outcome = state[cur] == Resolution::kOrphan ? Resolution::kDetached
                                                    : state[cur];
        root = root_of[cur];
        break;
      }
      if (r.kind != RecordKind::kReply) {
        if (is_root(r)) {
          outcome = Resolution::kAttached;
          root = cur;
        } else {
          outcome = Resolution::kOutside;
        }
        break;
      }
      state[cur] = Resolution::kInProgress;
      chain.push_back(cur);
      const auto parent = by_id.find(*r.ref_tweet_id);
      if (parent == by_id.end()) {
        // cur is the orphan; everything below it is detached.
        state[cur] = Resolution::kOrphan;
        chain.pop_back();
        outcome = Resolution::kDetached;
        break;
      }
      cur = parent->second;
    }
    for (size_t node : chain) {
      state[node] = outcome;
      root_of[node] = root;
    }
  }

  // Pass 3: materialise trees breadth-first.
  std::map<std::string, size_t> roots;  // root id -> record index
  std::unordered_map<size_t, std::vector<size_t>> children;
  for (const auto& [id, index] : by_id) {
    const InteractionRecord& r = records[index];
    if (is_root(r)) roots.emplace(id, index);
    switch (state[index]) {
      case Resolution::kAttached:
        children[by_id.at(*r.ref_tweet_id)].push_back(index);
        break;
      case Resolution::kOrphan:
        ++forest.tally.orphans;
        break;
      case Resolution::kDetached:
        ++forest.tally.detached;
        break;
      case Resolution::kOutside:
        ++forest.tally.outside;
        break;
      case Resolution::kCyclic:
        ++forest.tally.cyclic;
        break;
      default:
        break;
    }
  }
  auto by_time = [&](size_t a, size_t b) {
    return std::tie(records[a].created_at, records[a].tweet_id) <
           std::tie(records[b].created_at, records[b].tweet_id);
  };
  for (auto& [parent, kids] : children) {
    std::sort(kids.begin(), kids.end(), by_time);
  }

  auto count_subtree = [&](size_t index) {
    size_t total = 0;
    std::vector<size_t> stack{index};
    while (!stack.empty()) {
      const size_t cur = stack.back();
      stack.pop_back();
      ++total;
      if (const auto it = children.find(cur); it != children.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
    return total;
  };

  forest.trees.reserve(roots.size());
  for (const auto& [root_id, root_index] : roots) {
    ReplyTree tree;
    std::vector<size_t> source{root_index};
    const InteractionRecord& root = records[root_index];
    tree.nodes.push_back(
        {root.tweet_id, root.author_id, root.created_at, -1, 0, {}});
    for (size_t head = 0; head < tree.nodes.size(); ++head) {
      const auto it = children.find(source[head]);
      if (it == children.end()) continue;
      for (size_t child : it->second) {
        const InteractionRecord& r = records[child];
        if (r.created_at < tree.nodes[head].created_at) {
          ++forest.tally.timestamp_violations;
          forest.tally.dropped_descendants += count_subtree(child) - 1;
          continue;
        }
        const auto index = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes[head].children.push_back(index);
        tree.nodes.push_back({r.tweet_id, r.author_id, r.created_at,
                              static_cast<std::int32_t>(head),
                              tree.nodes[head].depth + 1,
                              {}});
        source.push_back(child);
      }
    }
    forest.trees.push_back(std::move(tree));
  }
  return forest;
}

TreeMetrics ComputeTreeMetrics(const ReplyTree& tree) {
  TreeMetrics metrics;
  metrics.size = tree.nodes.size();
  for (const TreeNode& node : tree.nodes) {
    metrics.depth = std::max<std::uint64_t>(metrics.depth, node.depth);
  }
  metrics.first_order = tree.nodes.empty() ? 0 : tree.root().children.size();
  return metrics;
}

std::vector<CcdfPoint> Ccdf(std::span<const std::uint64_t> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ccdf of an empty sample");
  }
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CcdfPoint> points;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    points.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
  }
  return points;
}

graph::InteractionGraph AggregateReplyNetwork(const ReplyForest& forest) {
  graph::InteractionGraph network;
  for (const ReplyTree& tree : forest.trees) {
    for (size_t i = 1; i < tree.nodes.size(); ++i) {
      const TreeNode& node = tree.nodes[i];
      network.AddInteraction(node.author_id,
                             tree.nodes[node.parent].author_id);
    }
  }
  return network;
}

}  // namespace debatenet::forest
