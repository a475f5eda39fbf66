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

#ifndef DEBATENET_FOREST_FOREST_IO_HPP_
#define DEBATENET_FOREST_FOREST_IO_HPP_

#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "forest/reply_forest.hpp"

namespace debatenet::forest {

using AuthorLabeler = std::function<std::string(const std::string& author)>;

// One JSON object per tree: {"root": id, "nodes": [{"id", "parent",
// "author", "created_at", "label"?}, ...]} with nodes in breadth-first order.
void WriteForest(const ReplyForest& forest, std::ostream& out,
                 const AuthorLabeler& labeler = nullptr);
ReplyForest ReadForest(std::istream& in);

// CSV tree_id,S,D,first_order.
void WriteMetricsCsv(const ReplyForest& forest, std::ostream& out);

void WriteCcdfCsv(std::span<const CcdfPoint> points, std::ostream& out);

std::string ForestTallyToJson(const ForestTally& tally);

}  // namespace debatenet::forest

#endif  // DEBATENET_FOREST_FOREST_IO_HPP_
