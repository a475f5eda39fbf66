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

#include "layout/barnes_hut.hpp"

#include <algorithm>
#include <cmath>

namespace debatenet::layout {

QuadTree::QuadTree(std::span<const Vec2> positions,
                   std::span<const double> masses)
    : positions_(positions), masses_(masses), next_(positions.size(), -1) {
  if (positions.empty()) return;
  double min_x = positions[0].x, max_x = positions[0].x;
  double min_y = positions[0].y, max_y = positions[0].y;
  for (const Vec2& p : positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  Cell root;
  root.cx = 0.5 * (min_x + max_x);
  root.cy = 0.5 * (min_y + max_y);
  const double span = std::max(max_x - min_x, max_y - min_y);
  root.half = 0.5 * span * (1.0 + 1e-9) + 1e-12;
  cells_.reserve(4 * positions.size() + 1);
  cells_.push_back(root);
  for (size_t i = 0; i < positions.size(); ++i) {
    Insert(static_cast<std::int32_t>(i));
  }
}

void QuadTree::Accumulate(Cell& cell, std::int32_t body) const {
  const double m = masses_[body];
  cell.mass += m;
  cell.mx += m * positions_[body].x;
  cell.my += m * positions_[body].y;
}

int QuadTree::Quadrant(const Cell& cell, std::int32_t body) const {
  const Vec2& p = positions_[body];
  return (p.x >= cell.cx ? 1 : 0) | (p.y >= cell.cy ? 2 : 0);
}

void QuadTree::Split(std::int32_t index) {
  const double quarter = 0.5 * cells_[index].half;
  const double cx = cells_[index].cx;
  const double cy = cells_[index].cy;
  for (int q = 0; q < 4; ++q) {
    Cell child;
    child.half = quarter;
    child.cx = cx + ((q & 1) ? quarter : -quarter);
    child.cy = cy + ((q & 2) ? quarter : -quarter);
    cells_[index].child[q] = static_cast<std::int32_t>(cells_.size());
    cells_.push_back(child);
  }
  cells_[index].leaf = false;
}

void QuadTree::Insert(std::int32_t body) {
  std::int32_t c = 0;
  int depth = 0;
  while (true) {
    Accumulate(cells_[c], body);
    if (cells_[c].leaf) {
      if (cells_[c].count == 0) {
        cells_[c].body = body;
        cells_[c].count = 1;
        return;
      }
      if (depth >= kMaxDepth) {
        next_[body] = cells_[c].body;
        cells_[c].body = body;
        ++cells_[c].count;
        return;
      }
      // Below kMaxDepth a non-empty leaf holds exactly one body.
      const std::int32_t resident = cells_[c].body;
      cells_[c].body = -1;
      cells_[c].count = 0;
      Split(c);
      const std::int32_t target =
          cells_[c].child[Quadrant(cells_[c], resident)];
      Accumulate(cells_[target], resident);
      cells_[target].body = resident;
      cells_[target].count = 1;
    }
    c = cells_[c].child[Quadrant(cells_[c], body)];
    ++depth;
  }
}

Vec2 QuadTree::Force(size_t i, double repulsion, double theta) const {
  Vec2 force;
  if (cells_.empty()) return force;
  const Vec2 p = positions_[i];
  const double coeff = repulsion * masses_[i];
  std::int32_t stack[4 * kMaxDepth + 8];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Cell& cell = cells_[stack[--top]];
    if (cell.mass == 0.0) continue;
    if (cell.leaf) {
      for (std::int32_t b = cell.body; b >= 0; b = next_[b]) {
        if (static_cast<size_t>(b) == i) continue;
        const double dx = p.x - positions_[b].x;
        const double dy = p.y - positions_[b].y;
        const double d2 = dx * dx + dy * dy;
        if (d2 > 0.0) {
          const double f = coeff * masses_[b] / d2;
          force.x += dx * f;
          force.y += dy * f;
        }
      }
      continue;
    }
    const double com_x = cell.mx / cell.mass;
    const double com_y = cell.my / cell.mass;
    const double dx = p.x - com_x;
    const double dy = p.y - com_y;
    const double d2 = dx * dx + dy * dy;
    const bool inside = std::abs(p.x - cell.cx) <= cell.half &&
                        std::abs(p.y - cell.cy) <= cell.half;
    const double width = 2.0 * cell.half;
    if (!inside && d2 > 0.0 && width * width < theta * theta * d2) {
      const double f = coeff * cell.mass / d2;
      force.x += dx * f;
      force.y += dy * f;
      continue;
    }
    for (int q = 3; q >= 0; --q) stack[top++] = cell.child[q];
  }
  return force;
}

}  // namespace debatenet::layout
