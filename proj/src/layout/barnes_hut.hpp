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

#ifndef DEBATENET_LAYOUT_BARNES_HUT_HPP_
#define DEBATENET_LAYOUT_BARNES_HUT_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "layout/force_layout.hpp"

namespace debatenet::layout {

// Quadtree over weighted points for approximate 1/d repulsion. Built once per
// iteration; queries are read-only and may run concurrently.
class QuadTree {
 public:
  QuadTree(std::span<const Vec2> positions, std::span<const double> masses);

  // Repulsion on body i: k_r m_i m_j (p_i - p_j) / d^2 summed over bodies,
  // with cells replaced by their centre of mass when width / d < theta and the
  // cell does not contain p_i.
  Vec2 Force(size_t i, double repulsion, double theta) const;

  size_t cell_count() const { return cells_.size(); }

 private:
  static constexpr int kMaxDepth = 48;

  struct Cell {
    double cx = 0.0;
    double cy = 0.0;
    double half = 0.0;
    double mass = 0.0;
    double mx = 0.0;  // mass-weighted coordinate sums
    double my = 0.0;
    std::array<std::int32_t, 4> child{-1, -1, -1, -1};
    std::int32_t body = -1;  // head of the body list for leaves
    std::int32_t count = 0;
    bool leaf = true;
  };

  void Insert(std::int32_t body);
  void Accumulate(Cell& cell, std::int32_t body) const;
  int Quadrant(const Cell& cell, std::int32_t body) const;
  void Split(std::int32_t cell);

  std::span<const Vec2> positions_;
  std::span<const double> masses_;
  std::vector<Cell> cells_;
  std::vector<std::int32_t> next_;
};

}  // namespace debatenet::layout

#endif  // DEBATENET_LAYOUT_BARNES_HUT_HPP_
