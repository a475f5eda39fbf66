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

#include "classify/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "common/csv.hpp"
#include "common/error.hpp"
#include "common/text.hpp"

namespace debatenet::classify {

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kMajority:
      return "majority";
    case Label::kMinority:
      return "minority";
    case Label::kIntermediate:
      return "intermediate";
    case Label::kUnclassified:
      return "unclassified";
  }
  return "unclassified";
}

Label ParseLabel(std::string_view name) {
  if (name == "majority") return Label::kMajority;
  if (name == "minority") return Label::kMinority;
  if (name == "intermediate") return Label::kIntermediate;
  if (name == "unclassified") return Label::kUnclassified;
  throw Error(ErrorCode::kParse, fmt::format("unknown label '{}'", name));
}

std::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kEventNetwork:
      return "event";
    case Provenance::kFallbackNetwork:
      return "fallback";
    case Provenance::kNone:
      return "none";
  }
  return "none";
}

Provenance ParseProvenance(std::string_view name) {
  if (name == "event") return Provenance::kEventNetwork;
  if (name == "fallback") return Provenance::kFallbackNetwork;
  if (name == "none") return Provenance::kNone;
  throw Error(ErrorCode::kParse, fmt::format("unknown provenance '{}'", name));
}

void ClusterAssignment::Set(const std::string& user, Label label,
                            Provenance provenance) {
  // provenance is None exactly when the label is Unclassified.
  if (label == Label::kUnclassified) provenance = Provenance::kNone;
  if (provenance == Provenance::kNone) label = Label::kUnclassified;
  entries_[user] = {label, provenance};
}

Classification ClusterAssignment::Get(const std::string& user) const {
  const auto it = entries_.find(user);
  return it == entries_.end() ? Classification{} : it->second;
}

std::array<size_t, 4> ClusterAssignment::LabelCounts() const {
  std::array<size_t, 4> counts{};
  for (const auto& [user, c] : entries_) ++counts[static_cast<int>(c.label)];
  return counts;
}

void ValidateBoundaries(const BoundarySpec& spec) {
  for (const Region* region : {&spec.first, &spec.second}) {
    if (std::string problem = CheckRegion(*region); !problem.empty()) {
      throw Error(ErrorCode::kData, "boundaries: " + problem);
    }
  }
  if (spec.first.name == spec.second.name) {
    throw Error(ErrorCode::kData, "boundaries: region names must differ");
  }
  if (RegionsOverlap(spec.first, spec.second)) {
    throw Error(ErrorCode::kData,
                fmt::format("boundaries: regions '{}' and '{}' overlap",
                            spec.first.name, spec.second.name));
  }
}

BoundarySpec ReadBoundaries(std::istream& in) {
  std::vector<Region> regions;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (text.rfind("region", 0) == 0) {
      std::vector<std::string> words;
      for (auto& w : SplitString(text, ' ')) {
        if (!w.empty()) words.push_back(std::move(w));
      }
      if (words.size() != 3) {
        throw Error(ErrorCode::kParse,
                    fmt::format("boundaries line {}: expected 'region <name> "
                                "polygon|polyline'",
                                line_no));
      }
      Region region;
      region.name = words[1];
      if (words[2] == "polygon") {
        region.shape = RegionShape::kPolygon;
      } else if (words[2] == "polyline") {
        region.shape = RegionShape::kPolyline;
      } else {
        throw Error(ErrorCode::kParse,
                    fmt::format("boundaries line {}: unknown shape '{}'",
                                line_no, words[2]));
      }
      regions.push_back(std::move(region));
      continue;
    }
    if (regions.empty()) {
      throw Error(ErrorCode::kParse,
                  fmt::format("boundaries line {}: vertex before any region",
                              line_no));
    }
    const auto parts = SplitString(text, ',');
    if (parts.size() != 2) {
      throw Error(ErrorCode::kParse,
                  fmt::format("boundaries line {}: expected x,y", line_no));
    }
    regions.back().vertices.push_back(
        {ParseDouble(Trim(parts[0])), ParseDouble(Trim(parts[1]))});
  }
  if (regions.size() != 2) {
    throw Error(ErrorCode::kData,
                fmt::format("boundaries: expected 2 regions, found {}",
                            regions.size()));
  }
  BoundarySpec spec{std::move(regions[0]), std::move(regions[1])};
  ValidateBoundaries(spec);
  return spec;
}

void WriteBoundaries(const BoundarySpec& spec, std::ostream& out) {
  for (const Region* region : {&spec.first, &spec.second}) {
    out << "region " << region->name << ' '
        << (region->shape == RegionShape::kPolygon ? "polygon" : "polyline")
        << '\n';
    for (const Vec2& v : region->vertices) {
      out << FormatDouble(v.x) << ',' << FormatDouble(v.y) << '\n';
    }
  }
}

AssignmentResult AssignClusters(const layout::LayoutEmbedding& embedding,
                                const BoundarySpec& boundaries,
                                std::span<const std::string> universe) {
  std::vector<int> side(embedding.ids.size(), -1);
  size_t first_count = 0, second_count = 0;
  for (size_t i = 0; i < embedding.ids.size(); ++i) {
    const Vec2 p = embedding.positions[i];
    if (boundaries.first.Contains(p)) {
      side[i] = 0;
      ++first_count;
    } else if (boundaries.second.Contains(p)) {
      side[i] = 1;
      ++second_count;
    }
  }
  const bool first_is_majority = first_count >= second_count;
  AssignmentResult result;
  result.majority_region =
      first_is_majority ? boundaries.first.name : boundaries.second.name;
  result.minority_region =
      first_is_majority ? boundaries.second.name : boundaries.first.name;
  for (const std::string& user : universe) {
    result.assignment.Set(user, Label::kUnclassified, Provenance::kNone);
  }
  for (size_t i = 0; i < embedding.ids.size(); ++i) {
    Label label = Label::kIntermediate;
    if (side[i] >= 0) {
      const bool majority = (side[i] == 0) == first_is_majority;
      label = majority ? Label::kMajority : Label::kMinority;
    }
    result.assignment.Set(embedding.ids[i], label, Provenance::kEventNetwork);
  }
  return result;
}

ClusterAssignment FallbackMerge(const ClusterAssignment& event,
                                const ClusterAssignment& fallback,
                                std::span<const std::string> reply_users) {
  ClusterAssignment merged;
  for (const std::string& user : reply_users) {
    const Classification e = event.Get(user);
    if (e.label != Label::kUnclassified) {
      merged.Set(user, e.label, e.provenance);
      continue;
    }
    const Classification f = fallback.Get(user);
    if (f.label != Label::kUnclassified) {
      merged.Set(user, f.label, Provenance::kFallbackNetwork);
    } else {
      merged.Set(user, Label::kUnclassified, Provenance::kNone);
    }
  }
  return merged;
}

double Coverage(const ClusterAssignment& assignment,
                std::span<const std::string> users) {
  if (users.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "coverage of an empty user set");
  }
  size_t classified = 0;
  for (const std::string& user : users) {
    if (assignment.LabelOf(user) != Label::kUnclassified) ++classified;
  }
  return static_cast<double>(classified) / static_cast<double>(users.size());
}

void WriteAssignmentCsv(const ClusterAssignment& assignment, std::ostream& out) {
  out << "user_id,label,provenance\n";
  for (const auto& [user, c] : assignment.entries()) {
    out << CsvEscape(user) << ',' << LabelName(c.label) << ','
        << ProvenanceName(c.provenance) << '\n';
  }
}

ClusterAssignment ReadAssignmentCsv(std::istream& in) {
  ClusterAssignment assignment;
  std::vector<std::string> fields;
  size_t row = 0;
  while (ReadCsvRow(in, fields)) {
    ++row;
    if (row == 1 && !fields.empty() && fields[0] == "user_id") continue;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse,
                  fmt::format("assignment row {}: expected "
                              "user_id,label,provenance",
                              row));
    }
    assignment.Set(fields[0], ParseLabel(fields[1]),
                   ParseProvenance(fields[2]));
  }
  return assignment;
}

namespace {

constexpr int kPoleA = 0;
constexpr int kPoleB = 1;
constexpr int kMiddle = 2;

struct HalfPlane {
  Vec2 normal;  // keeps points with normal . p >= offset
  double offset;
};

double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

std::vector<Vec2> Clip(const std::vector<Vec2>& polygon, const HalfPlane& h) {
  std::vector<Vec2> out;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double da = Dot(h.normal, a) - h.offset;
    const double db = Dot(h.normal, b) - h.offset;
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      const double t = da / (da - db);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

// Fisher discriminant between point sets g and h with the threshold that
// misclassifies the fewest points; g lies on the positive side.
HalfPlane Separate(const std::vector<Vec2>& g, const std::vector<Vec2>& h) {
  auto mean = [](const std::vector<Vec2>& pts) {
    Vec2 m;
    for (const Vec2& p : pts) {
      m.x += p.x;
      m.y += p.y;
    }
    m.x /= static_cast<double>(pts.size());
    m.y /= static_cast<double>(pts.size());
    return m;
  };
  const Vec2 mg = mean(g);
  const Vec2 mh = mean(h);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto* set : {&g, &h}) {
    const Vec2 m = set == &g ? mg : mh;
    for (const Vec2& p : *set) {
      sxx += (p.x - m.x) * (p.x - m.x);
      sxy += (p.x - m.x) * (p.y - m.y);
      syy += (p.y - m.y) * (p.y - m.y);
    }
  }
  const double ridge = 1e-9 * (sxx + syy) + 1e-300;
  sxx += ridge;
  syy += ridge;
  const double det = sxx * syy - sxy * sxy;
  const Vec2 d{mg.x - mh.x, mg.y - mh.y};
  Vec2 w{(syy * d.x - sxy * d.y) / det, (-sxy * d.x + sxx * d.y) / det};
  double norm = std::hypot(w.x, w.y);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    w = d;
    norm = std::hypot(w.x, w.y);
  }
  if (!(norm > 0.0)) w = {1.0, 0.0}, norm = 1.0;
  w.x /= norm;
  w.y /= norm;

  std::vector<std::pair<double, bool>> proj;  // (projection, belongs to g)
  for (const Vec2& p : g) proj.emplace_back(Dot(w, p), true);
  for (const Vec2& p : h) proj.emplace_back(Dot(w, p), false);
  std::sort(proj.begin(), proj.end());
  const double centre = 0.5 * (Dot(w, mg) + Dot(w, mh));
  // Threshold below every point: all of h is misclassified.
  long errors = static_cast<long>(h.size());
  long best = errors;
  double best_cut = proj.front().first - 1.0;
  for (size_t i = 0; i < proj.size(); ++i) {
    errors += proj[i].second ? 1 : -1;
    if (i + 1 < proj.size() && proj[i + 1].first == proj[i].first) continue;
    const double cut = i + 1 < proj.size()
                           ? 0.5 * (proj[i].first + proj[i + 1].first)
                           : proj[i].first + 1.0;
    if (errors < best ||
        (errors == best && std::abs(cut - centre) < std::abs(best_cut - centre))) {
      best = errors;
      best_cut = cut;
    }
  }
  return {w, best_cut};
}

BoundarySpec BoundariesFromGroups(const std::vector<Vec2>& positions,
                                  const std::vector<int>& groups,
                                  const std::string& name_a,
                                  const std::string& name_b) {
  std::array<std::vector<Vec2>, 3> members;
  for (size_t i = 0; i < positions.size(); ++i) {
    if (groups[i] >= 0) members[static_cast<size_t>(groups[i])].push_back(positions[i]);
  }
  for (int g : {kPoleA, kPoleB}) {
    if (members[g].size() < 2) {
      throw Error(ErrorCode::kData,
                  fmt::format("boundaries: pole '{}' has {} reference points",
                              g == kPoleA ? name_a : name_b, members[g].size()));
    }
  }
  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (const Vec2& p : positions) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  const double pad = 10.0 * extent;
  const double gap = 1e-6 * extent;
  const std::vector<Vec2> box = {{lo_x - pad, lo_y - pad},
                                 {hi_x + pad, lo_y - pad},
                                 {hi_x + pad, hi_y + pad},
                                 {lo_x - pad, hi_y + pad}};

  auto region = [&](int self, int other, const std::string& name) {
    std::vector<Vec2> poly = box;
    for (int h : {other, kMiddle}) {
      if (members[h].size() < 2) continue;
      HalfPlane cut = Separate(members[self], members[h]);
      cut.offset += gap;
      poly = Clip(poly, cut);
    }
    std::vector<Vec2> clean;
    for (const Vec2& v : poly) {
      if (clean.empty() || std::hypot(v.x - clean.back().x, v.y - clean.back().y) >
                               1e-9 * extent) {
        clean.push_back(v);
      }
    }
    while (clean.size() > 1 &&
           std::hypot(clean.front().x - clean.back().x,
                      clean.front().y - clean.back().y) <= 1e-9 * extent) {
      clean.pop_back();
    }
    if (clean.size() < 3) {
      throw Error(ErrorCode::kData,
                  fmt::format("boundaries: region '{}' is empty", name));
    }
    return Region{name, RegionShape::kPolygon, std::move(clean)};
  };
  BoundarySpec spec{region(kPoleA, kPoleB, name_a), region(kPoleB, kPoleA, name_b)};
  ValidateBoundaries(spec);
  return spec;
}

struct Gaussian {
  double weight = 0.0;
  Vec2 mean;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
};

// Hard labels from a three-component Gaussian mixture fitted by EM, seeded by
// cutting the principal-axis projection into thirds by rank.
std::vector<int> MixtureLabels(const std::vector<Vec2>& pts, Vec2 axis) {
  const size_t n = pts.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const double pa = Dot(axis, pts[a]);
    const double pb = Dot(axis, pts[b]);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<std::array<double, 3>> resp(n, {0.0, 0.0, 0.0});
  for (size_t r = 0; r < n; ++r) resp[order[r]][std::min<size_t>(2, 3 * r / n)] = 1.0;

  double total_var = 0.0;
  {
    Vec2 m;
    for (const Vec2& p : pts) m.x += p.x, m.y += p.y;
    m.x /= static_cast<double>(n);
    m.y /= static_cast<double>(n);
    for (const Vec2& p : pts) {
      total_var += (p.x - m.x) * (p.x - m.x) + (p.y - m.y) * (p.y - m.y);
    }
    total_var /= static_cast<double>(n);
  }
  const double ridge = 1e-6 * total_var + 1e-12;
  std::array<Gaussian, 3> comp;
  double previous = -INFINITY;
  for (int iter = 0; iter < 300; ++iter) {
    for (int k = 0; k < 3; ++k) {
      Gaussian& c = comp[k];
      c = Gaussian{};
      for (size_t i = 0; i < n; ++i) {
        c.weight += resp[i][k];
        c.mean.x += resp[i][k] * pts[i].x;
        c.mean.y += resp[i][k] * pts[i].y;
      }
      if (!(c.weight > 0.0)) {
        throw Error(ErrorCode::kData, "mixture component collapsed");
      }
      c.mean.x /= c.weight;
      c.mean.y /= c.weight;
      for (size_t i = 0; i < n; ++i) {
        const double dx = pts[i].x - c.mean.x;
        const double dy = pts[i].y - c.mean.y;
        c.sxx += resp[i][k] * dx * dx;
        c.sxy += resp[i][k] * dx * dy;
        c.syy += resp[i][k] * dy * dy;
      }
      c.sxx = c.sxx / c.weight + ridge;
      c.sxy = c.sxy / c.weight;
      c.syy = c.syy / c.weight + ridge;
      c.weight /= static_cast<double>(n);
    }
    double likelihood = 0.0;
    for (size_t i = 0; i < n; ++i) {
      std::array<double, 3> logp{};
      for (int k = 0; k < 3; ++k) {
        const Gaussian& c = comp[k];
        const double det = c.sxx * c.syy - c.sxy * c.sxy;
        const double dx = pts[i].x - c.mean.x;
        const double dy = pts[i].y - c.mean.y;
        const double q = (c.syy * dx * dx - 2.0 * c.sxy * dx * dy + c.sxx * dy * dy) / det;
        logp[k] = std::log(c.weight) - 0.5 * std::log(det) - 0.5 * q;
      }
      const double top = *std::max_element(logp.begin(), logp.end());
      double sum = 0.0;
      for (int k = 0; k < 3; ++k) sum += std::exp(logp[k] - top);
      for (int k = 0; k < 3; ++k) resp[i][k] = std::exp(logp[k] - top) / sum;
      likelihood += top + std::log(sum);
    }
    if (std::abs(likelihood - previous) <= 1e-10 * std::abs(likelihood)) break;
    previous = likelihood;
  }
  std::vector<int> labels(n);
  for (size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(std::max_element(resp[i].begin(), resp[i].end()) -
                                 resp[i].begin());
  }
  // Renumber so the ends of the principal axis are the poles.
  std::array<int, 3> rank{0, 1, 2};
  std::sort(rank.begin(), rank.end(), [&](int a, int b) {
    return Dot(axis, comp[a].mean) < Dot(axis, comp[b].mean);
  });
  std::array<int, 3> relabel{};
  relabel[rank[0]] = kPoleA;
  relabel[rank[1]] = kMiddle;
  relabel[rank[2]] = kPoleB;
  for (int& l : labels) l = relabel[l];
  return labels;
}

}  // namespace

BoundarySpec BoundariesFromReference(
    const layout::LayoutEmbedding& embedding,
    const std::map<std::string, Label>& reference) {
  std::vector<int> groups(embedding.ids.size(), -1);
  for (size_t i = 0; i < embedding.ids.size(); ++i) {
    const auto it = reference.find(embedding.ids[i]);
    if (it == reference.end()) continue;
    switch (it->second) {
      case Label::kMajority:
        groups[i] = kPoleA;
        break;
      case Label::kMinority:
        groups[i] = kPoleB;
        break;
      case Label::kIntermediate:
        groups[i] = kMiddle;
        break;
      case Label::kUnclassified:
        break;
    }
  }
  return BoundariesFromGroups(embedding.positions, groups, "majority", "minority");
}

BoundarySpec SuggestBoundaries(const layout::LayoutEmbedding& embedding) {
  const size_t n = embedding.positions.size();
  if (n < 6) {
    throw Error(ErrorCode::kData,
                "cannot suggest boundaries for fewer than 6 points");
  }
  double cx = 0.0, cy = 0.0;
  for (const Vec2& p : embedding.positions) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Vec2& p : embedding.positions) {
    sxx += (p.x - cx) * (p.x - cx);
    sxy += (p.x - cx) * (p.y - cy);
    syy += (p.y - cy) * (p.y - cy);
  }
  if (!(sxx + syy > 0.0)) {
    throw Error(ErrorCode::kData, "embedding has no spread");
  }
  // Principal eigenvector of the 2x2 covariance, sign fixed for determinism.
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  Vec2 axis{std::cos(angle), std::sin(angle)};
  if (axis.x < 0.0 || (axis.x == 0.0 && axis.y < 0.0)) axis = {-axis.x, -axis.y};
  const std::vector<int> labels = MixtureLabels(embedding.positions, axis);
  return BoundariesFromGroups(embedding.positions, labels, "pole_low", "pole_high");
}

}  // namespace debatenet::classify
