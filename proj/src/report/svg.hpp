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


#ifndef DEBATENET_REPORT_SVG_HPP_
#define DEBATENET_REPORT_SVG_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "assort/assortativity.hpp"
#include "classify/clusters.hpp"
#include "forest/reply_forest.hpp"
#include "layout/force_layout.hpp"

namespace debatenet::report {

// Scatter of a layout coloured by label, with boundary regions outlined.
// Either pointer may be null.
void WriteLayoutSvg(const layout::LayoutEmbedding& embedding,
                    const classify::ClusterAssignment* labels,
                    const classify::BoundarySpec* boundaries, std::ostream& out);

struct StepSeries {
  std::string name;
  std::vector<forest::CcdfPoint> points;
};

// Complementary cumulative distributions as step lines on a log y axis; the
// x axis is logarithmic when `log_x` is set (all thresholds must then be
// positive).
void WriteCcdfSvg(const std::vector<StepSeries>& series,
                  const std::string& x_label, bool log_x, std::ostream& out);

// Grouped bars per bin: each label's mass as a share of that label's total,
// with the all-node distribution as an outline.
void WriteHistogramSvg(const assort::Histogram& histogram, std::ostream& out);

}  // namespace debatenet::report

#endif  // DEBATENET_REPORT_SVG_HPP_
