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

#ifndef DEBATENET_CLASSIFY_GEOMETRY_HPP_
#define DEBATENET_CLASSIFY_GEOMETRY_HPP_

#include <span>
#include <string>
#include <vector>

#include "layout/force_layout.hpp"

namespace debatenet::classify {

using layout::Vec2;

enum class RegionShape {
  // Closed simple polygon; the region is its interior plus boundary.
  kPolygon,
  // Open polyline whose first and last segments extend to infinity; the
  // region is everything on its left (walking from the first vertex to the
  // last) plus the line itself.
  kPolyline,
};

struct Region {
  std::string name;
  RegionShape shape = RegionShape::kPolygon;
  std::vector<Vec2> vertices;

  // Closed-region membership: points on the boundary belong to the region.
  bool Contains(Vec2 p) const;
  // Membership excluding the boundary (within a small tolerance).
  bool ContainsStrictly(Vec2 p) const;
};

// Empty when the region is well formed, otherwise the reason.
std::string CheckRegion(const Region& region);

// True when the two regions share interior points. Both must be well formed.
bool RegionsOverlap(const Region& a, const Region& b);

}  // namespace debatenet::classify

#endif  // DEBATENET_CLASSIFY_GEOMETRY_HPP_
