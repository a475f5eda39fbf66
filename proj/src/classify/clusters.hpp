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

#ifndef DEBATENET_CLASSIFY_CLUSTERS_HPP_
#define DEBATENET_CLASSIFY_CLUSTERS_HPP_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "classify/geometry.hpp"
#include "layout/force_layout.hpp"

namespace debatenet::classify {

enum class Label { kMajority = 0, kMinority = 1, kIntermediate = 2, kUnclassified = 3 };
enum class Provenance { kEventNetwork, kFallbackNetwork, kNone };

inline constexpr int kKnownLabels = 3;

std::string_view LabelName(Label label);
Label ParseLabel(std::string_view name);
std::string_view ProvenanceName(Provenance provenance);
Provenance ParseProvenance(std::string_view name);

struct Classification {
  Label label = Label::kUnclassified;
  Provenance provenance = Provenance::kNone;

  bool operator==(const Classification&) const = default;
};

// user -> label with provenance. Users not present are Unclassified.
class ClusterAssignment {
 public:
  void Set(const std::string& user, Label label, Provenance provenance);
  Classification Get(const std::string& user) const;
  Label LabelOf(const std::string& user) const { return Get(user).label; }

  const std::map<std::string, Classification>& entries() const {
    return entries_;
  }
  size_t size() const { return entries_.size(); }
  std::array<size_t, 4> LabelCounts() const;

  bool operator==(const ClusterAssignment&) const = default;

 private:
  std::map<std::string, Classification> entries_;
};

// Two disjoint regions in layout coordinates; points in neither are
// Intermediate.
struct BoundarySpec {
  Region first;
  Region second;
};

// Throws Error(kData) when a region is malformed or the regions overlap.
void ValidateBoundaries(const BoundarySpec& spec);

// Text format:
//   # comment
//   region <name> polygon|polyline
//   x,y
//   ...
// Exactly two regions. Validates on load.
BoundarySpec ReadBoundaries(std::istream& in);
void WriteBoundaries(const BoundarySpec& spec, std::ostream& out);

struct AssignmentResult {
  ClusterAssignment assignment;
  // Region names mapped to Majority / Minority (larger pole is Majority).
  std::string majority_region;
  std::string minority_region;
};

// Labels every embedded node by region membership (closed regions; a point on
// a region's edge belongs to it). Which region is Majority is decided after
// the fact by member count, ties going to the first region. Users listed in
// `universe` but absent from the embedding come out Unclassified.
AssignmentResult AssignClusters(const layout::LayoutEmbedding& embedding,
                                const BoundarySpec& boundaries,
                                std::span<const std::string> universe = {});

// For each reply user: the event label unless Unclassified, else the
// fallback label, else Unclassified.
ClusterAssignment FallbackMerge(const ClusterAssignment& event,
                                const ClusterAssignment& fallback,
                                std::span<const std::string> reply_users);

// Share of `users` with a label other than Unclassified. Throws
// Error(kInvalidArgument) for an empty set.
double Coverage(const ClusterAssignment& assignment,
                std::span<const std::string> users);

// CSV user_id,label,provenance.
void WriteAssignmentCsv(const ClusterAssignment& assignment, std::ostream& out);
ClusterAssignment ReadAssignmentCsv(std::istream& in);

// Draws two convex pole regions from reference memberships, standing in for
// the manual drawing step. Each pole is the padded bounding box of the layout
// cut by Fisher discriminant lines against the other two groups; the poles
// are kept a hair apart so they never touch. `reference` maps users to
// Majority, Minority or Intermediate; anything else is ignored. Throws
// Error(kData) when a pole has fewer than 2 reference points.
BoundarySpec BoundariesFromReference(
    const layout::LayoutEmbedding& embedding,
    const std::map<std::string, Label>& reference);

// Unsupervised variant: a three-component Gaussian mixture on the positions,
// the components at either end of the principal axis becoming the poles.
BoundarySpec SuggestBoundaries(const layout::LayoutEmbedding& embedding);

}  // namespace debatenet::classify

#endif  // DEBATENET_CLASSIFY_CLUSTERS_HPP_
