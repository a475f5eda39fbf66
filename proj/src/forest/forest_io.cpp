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

#include "forest/forest_io.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/timeutil.hpp"

namespace debatenet::forest {

using nlohmann::ordered_json;

void WriteForest(const ReplyForest& forest, std::ostream& out,
                 const AuthorLabeler& labeler) {
  for (const ReplyTree& tree : forest.trees) {
    ordered_json obj;
    obj["root"] = tree.id();
    ordered_json nodes = ordered_json::array();
    for (const TreeNode& node : tree.nodes) {
      ordered_json n;
      n["id"] = node.tweet_id;
      n["parent"] = node.parent < 0
                        ? ordered_json(nullptr)
                        : ordered_json(tree.nodes[node.parent].tweet_id);
      n["author"] = node.author_id;
      n["created_at"] = FormatIso8601(node.created_at);
      if (labeler) n["label"] = labeler(node.author_id);
      nodes.push_back(std::move(n));
    }
    obj["nodes"] = std::move(nodes);
    out << obj.dump() << '\n';
  }
}

ReplyForest ReadForest(std::istream& in) {
  ReplyForest forest;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const ordered_json obj = ordered_json::parse(line);
      ReplyTree tree;
      std::map<std::string, std::uint32_t> index;
      for (const auto& n : obj.at("nodes")) {
        TreeNode node;
        node.tweet_id = n.at("id").get<std::string>();
        node.author_id = n.at("author").get<std::string>();
        node.created_at = ParseIso8601(n.at("created_at").get<std::string>());
        const auto& parent = n.at("parent");
        if (!parent.is_null()) {
          const auto it = index.find(parent.get<std::string>());
          if (it == index.end()) {
            throw Error(ErrorCode::kParse, "parent listed after child");
          }
          node.parent = static_cast<std::int32_t>(it->second);
          node.depth = tree.nodes[it->second].depth + 1;
          tree.nodes[it->second].children.push_back(
              static_cast<std::uint32_t>(tree.nodes.size()));
        } else if (!tree.nodes.empty()) {
          throw Error(ErrorCode::kParse, "tree has more than one root");
        }
        index.emplace(node.tweet_id,
                      static_cast<std::uint32_t>(tree.nodes.size()));
        tree.nodes.push_back(std::move(node));
      }
      if (tree.nodes.empty()) throw Error(ErrorCode::kParse, "empty tree");
      forest.trees.push_back(std::move(tree));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse,
                  fmt::format("forest line {}: {}", line_no, e.what()));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  fmt::format("forest line {}: {}", line_no, e.what()));
    }
  }
  return forest;
}

void WriteMetricsCsv(const ReplyForest& forest, std::ostream& out) {
  out << "tree_id,S,D,first_order\n";
  for (const ReplyTree& tree : forest.trees) {
    const TreeMetrics m = ComputeTreeMetrics(tree);
    out << CsvEscape(tree.id()) << ',' << m.size << ',' << m.depth << ','
        << m.first_order << '\n';
  }
}

void WriteCcdfCsv(std::span<const CcdfPoint> points, std::ostream& out) {
  out << "threshold,fraction\n";
  for (const CcdfPoint& p : points) {
    out << p.threshold << ',' << FormatDouble(p.fraction) << '\n';
  }
}

std::string ForestTallyToJson(const ForestTally& tally) {
  ordered_json obj;
  obj["orphans"] = tally.orphans;
  obj["detached"] = tally.detached;
  obj["outside"] = tally.outside;
  obj["timestamp_violations"] = tally.timestamp_violations;
  obj["dropped_descendants"] = tally.dropped_descendants;
  obj["cyclic"] = tally.cyclic;
  obj["duplicates"] = tally.duplicates;
  return obj.dump(2);
}

}  // namespace debatenet::forest
