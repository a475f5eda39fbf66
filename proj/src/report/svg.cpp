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

#include "report/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "common/error.hpp"

namespace debatenet::report {

using layout::Vec2;

namespace {

constexpr std::array<const char*, 4> kColors = {"#d62728", "#1f77b4",
                                                "#2ca02c", "#9a9a9a"};
constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 60.0;

void Header(std::ostream& out, double width, double height) {
  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" "
      "height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} {1:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      width, height);
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void Legend(std::ostream& out, double x, double y,
            const std::vector<std::pair<std::string, std::string>>& items) {
  for (size_t i = 0; i < items.size(); ++i) {
    const double row = y + 18.0 * static_cast<double>(i);
    out << fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"12\" "
        "fill=\"{}\"/><text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
        x, row, items[i].second, x + 18.0, row + 10.0, Escape(items[i].first));
  }
}

}  // namespace

void WriteLayoutSvg(const layout::LayoutEmbedding& embedding,
                    const classify::ClusterAssignment* labels,
                    const classify::BoundarySpec* boundaries,
                    std::ostream& out) {
  constexpr double kSide = 800.0;
  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (const Vec2& p : embedding.positions) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  if (embedding.positions.empty()) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = (kSide - 2.0 * kMargin) / span;
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  auto sx = [&](double x) { return kSide / 2.0 + (x - cx) * scale; };
  auto sy = [&](double y) { return kSide / 2.0 - (y - cy) * scale; };

  Header(out, kSide, kSide);
  out << fmt::format(
      "<defs><clipPath id=\"plot\"><rect x=\"{0:.1f}\" y=\"{0:.1f}\" "
      "width=\"{1:.1f}\" height=\"{1:.1f}\"/></clipPath></defs>\n",
      kMargin / 2.0, kSide - kMargin);
  out << "<g clip-path=\"url(#plot)\">\n";
  for (size_t i = 0; i < embedding.positions.size(); ++i) {
    int colour = 3;
    if (labels != nullptr) {
      colour = static_cast<int>(labels->LabelOf(embedding.ids[i]));
    }
    out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.5\" fill=\"{}\"/>\n",
                       sx(embedding.positions[i].x), sy(embedding.positions[i].y),
                       kColors[colour]);
  }
  if (boundaries != nullptr) {
    for (const classify::Region* region : {&boundaries->first, &boundaries->second}) {
      std::vector<Vec2> v = region->vertices;
      if (region->shape == classify::RegionShape::kPolyline && v.size() >= 2) {
        // Extend the end rays well past the plot.
        auto extend = [&](Vec2 from, Vec2 to) {
          const double dx = to.x - from.x;
          const double dy = to.y - from.y;
          const double len = std::max(std::hypot(dx, dy), 1e-12);
          return Vec2{to.x + dx / len * span * 100.0, to.y + dy / len * span * 100.0};
        };
        v.insert(v.begin(), extend(v[1], v[0]));
        v.push_back(extend(v[v.size() - 2], v.back()));
      }
      std::string points;
      for (const Vec2& p : v) points += fmt::format("{:.2f},{:.2f} ", sx(p.x), sy(p.y));
      out << fmt::format(
          "<{} points=\"{}\" fill=\"none\" stroke=\"black\" "
          "stroke-width=\"1.5\" stroke-dasharray=\"6,3\"/>\n",
          region->shape == classify::RegionShape::kPolygon ? "polygon" : "polyline",
          points);
    }
  }
  out << "</g>\n";
  if (labels != nullptr) {
    Legend(out, 20.0, 20.0,
           {{"majority", kColors[0]}, {"minority", kColors[1]},
            {"intermediate", kColors[2]}, {"unclassified", kColors[3]}});
  }
  out << "</svg>\n";
}

void WriteCcdfSvg(const std::vector<StepSeries>& series,
                  const std::string& x_label, bool log_x, std::ostream& out) {
  double x_max = 1.0;
  double x_min = log_x ? INFINITY : 0.0;
  double y_min = 1.0;
  for (const StepSeries& s : series) {
    for (const forest::CcdfPoint& p : s.points) {
      const double x = static_cast<double>(p.threshold);
      if (log_x && x <= 0.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "log-scaled CCDF needs positive thresholds");
      }
      x_max = std::max(x_max, x);
      if (log_x) x_min = std::min(x_min, x);
      if (p.fraction > 0.0) y_min = std::min(y_min, p.fraction);
    }
  }
  if (!std::isfinite(x_min)) x_min = 1.0;
  const double y_floor = std::pow(10.0, std::floor(std::log10(y_min)));
  auto tx = [&](double x) {
    return log_x ? std::log10(x) : x;
  };
  const double x0 = tx(x_min);
  const double x1 = std::max(tx(x_max * (log_x ? 1.5 : 1.0) + (log_x ? 0.0 : 1.0)), x0 + 1e-9);
  const double y0 = std::log10(y_floor);
  auto px = [&](double x) {
    return kMargin + (tx(x) - x0) / (x1 - x0) * (kWidth - 2.0 * kMargin);
  };
  auto py = [&](double f) {
    return kHeight - kMargin -
           (std::log10(f) - y0) / (0.0 - y0 + 1e-12) * (kHeight - 2.0 * kMargin);
  };

  Header(out, kWidth, kHeight);
  out << fmt::format(
      "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
      "stroke=\"black\"/><line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" "
      "y2=\"{3:.1f}\" stroke=\"black\"/>\n",
      kMargin, kHeight - kMargin, kWidth - kMargin, kMargin);
  for (double f = y_floor; f <= 1.0 + 1e-12; f *= 10.0) {
    out << fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n",
        kMargin - 6.0, py(f) + 4.0, f);
  }
  if (log_x) {
    for (double x = std::pow(10.0, std::floor(std::log10(x_min))); x <= x_max * 1.5;
         x *= 10.0) {
      if (x < x_min) continue;
      out << fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n",
          px(x), kHeight - kMargin + 18.0, x);
    }
  } else {
    const double step = std::max(1.0, std::ceil(x_max / 10.0));
    for (double x = 0.0; x <= x_max; x += step) {
      out << fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n",
          px(x), kHeight - kMargin + 18.0, x);
    }
  }
  out << fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n"
      "<text x=\"16\" y=\"{:.1f}\" transform=\"rotate(-90 16 {:.1f})\" "
      "text-anchor=\"middle\">fraction &#8805; x</text>\n",
      kWidth / 2.0, kHeight - 16.0, Escape(x_label), kHeight / 2.0,
      kHeight / 2.0);

  std::vector<std::pair<std::string, std::string>> legend;
  for (size_t k = 0; k < series.size(); ++k) {
    const char* colour = kColors[k % kColors.size()];
    legend.emplace_back(series[k].name, colour);
    const auto& pts = series[k].points;
    if (pts.empty()) continue;
    std::string path = fmt::format("M {:.2f} {:.2f}", px(static_cast<double>(pts[0].threshold)),
                                   py(pts[0].fraction));
    for (size_t i = 1; i < pts.size(); ++i) {
      const double x = px(static_cast<double>(pts[i].threshold));
      path += fmt::format(" H {:.2f} V {:.2f}", x, py(pts[i].fraction));
    }
    path += fmt::format(" H {:.2f}", px(static_cast<double>(pts.back().threshold)) + 4.0);
    out << fmt::format(
        "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path,
        colour);
  }
  Legend(out, kWidth - kMargin - 140.0, kMargin, legend);
  out << "</svg>\n";
}

void WriteHistogramSvg(const assort::Histogram& histogram, std::ostream& out) {
  const size_t bins = histogram.bins();
  std::array<double, 4> totals{};
  for (const auto& row : histogram.mass) {
    for (int g = 0; g < 4; ++g) totals[g] += row[g];
  }
  double peak = 1e-12;
  for (const auto& row : histogram.mass) {
    for (int g = 0; g < 4; ++g) {
      if (totals[g] > 0.0) peak = std::max(peak, row[g] / totals[g]);
    }
  }
  const double plot_w = kWidth - 2.0 * kMargin;
  const double plot_h = kHeight - 2.0 * kMargin;
  const double bin_w = plot_w / static_cast<double>(std::max<size_t>(bins, 1));
  auto py = [&](double share) { return kHeight - kMargin - share / peak * plot_h; };

  Header(out, kWidth, kHeight);
  out << fmt::format(
      "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
      "stroke=\"black\"/>\n",
      kMargin, kHeight - kMargin, kWidth - kMargin);
  for (size_t k = 0; k < bins; ++k) {
    const double left = kMargin + bin_w * static_cast<double>(k);
    for (int g = 0; g < 3; ++g) {
      if (totals[g] <= 0.0) continue;
      const double share = histogram.mass[k][g] / totals[g];
      if (share <= 0.0) continue;
      const double bar_w = bin_w / 3.0;
      out << fmt::format(
          "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
          "fill=\"{}\"/>\n",
          left + bar_w * g, py(share), bar_w, kHeight - kMargin - py(share),
          kColors[g]);
    }
  }
  if (totals[3] > 0.0) {
    std::string path = fmt::format("M {:.2f} {:.2f}", kMargin, kHeight - kMargin);
    for (size_t k = 0; k < bins; ++k) {
      const double y = py(histogram.mass[k][3] / totals[3]);
      path += fmt::format(" V {:.2f} H {:.2f}", y,
                          kMargin + bin_w * static_cast<double>(k + 1));
    }
    path += fmt::format(" V {:.2f}", kHeight - kMargin);
    out << fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"black\"/>\n", path);
  }
  for (double r = -1.0; r <= 1.0 + 1e-9; r += 0.5) {
    const double x = kMargin + (r - histogram.lo) / (histogram.hi - histogram.lo) * plot_w;
    out << fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n", x,
        kHeight - kMargin + 18.0, r);
  }
  out << fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">local "
      "assortativity r</text>\n",
      kWidth / 2.0, kHeight - 16.0);
  Legend(out, kMargin + 10.0, kMargin,
         {{"majority", kColors[0]}, {"minority", kColors[1]},
          {"intermediate", kColors[2]}, {"all nodes (outline)", "black"}});
  out << "</svg>\n";
}

}  // namespace debatenet::report
