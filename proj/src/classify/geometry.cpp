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

#include "classify/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

namespace debatenet::classify {
namespace {

constexpr double kEps = 1e-12;

double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
Vec2 Sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double Norm(Vec2 a) { return std::hypot(a.x, a.y); }

// A boundary piece: segment from a to b, optionally unbounded at either end.
struct Piece {
  Vec2 a;
  Vec2 b;
  bool infinite_before = false;  // extends beyond a, away from b
  bool infinite_after = false;   // extends beyond b, away from a
};

std::vector<Piece> Pieces(const Region& region) {
  std::vector<Piece> pieces;
  const auto& v = region.vertices;
  if (region.shape == RegionShape::kPolygon) {
    for (size_t i = 0; i < v.size(); ++i) {
      pieces.push_back({v[i], v[(i + 1) % v.size()]});
    }
  } else {
    for (size_t i = 0; i + 1 < v.size(); ++i) {
      pieces.push_back({v[i], v[i + 1], i == 0, i + 2 == v.size()});
    }
  }
  return pieces;
}

// Parameter of the closest point on the piece's supporting line, clamped to
// the piece's extent.
double ClosestParameter(const Piece& piece, Vec2 p) {
  const Vec2 d = Sub(piece.b, piece.a);
  const double len2 = Dot(d, d);
  double t = len2 > 0.0 ? Dot(Sub(p, piece.a), d) / len2 : 0.0;
  if (!piece.infinite_before) t = std::max(t, 0.0);
  if (!piece.infinite_after) t = std::min(t, 1.0);
  return t;
}

double DistanceToPiece(const Piece& piece, Vec2 p) {
  const double t = ClosestParameter(piece, p);
  const Vec2 d = Sub(piece.b, piece.a);
  const Vec2 q{piece.a.x + t * d.x, piece.a.y + t * d.y};
  return Norm(Sub(p, q));
}

// Signed side of p relative to an open polyline: > 0 left, < 0 right, 0 on it.
double PolylineSide(const std::vector<Vec2>& v, Vec2 p) {
  Region tmp;
  tmp.shape = RegionShape::kPolyline;
  tmp.vertices = v;
  const std::vector<Piece> pieces = Pieces(tmp);
  double best = std::numeric_limits<double>::infinity();
  size_t best_index = 0;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const double dist = DistanceToPiece(pieces[i], p);
    if (dist < best) {
      best = dist;
      best_index = i;
    }
  }
  if (best <= kEps * (1.0 + Norm(p))) return 0.0;
  const Piece& piece = pieces[best_index];
  const double t = ClosestParameter(piece, p);
  // Closest point at a shared vertex: decide with both incident pieces.
  std::optional<size_t> vertex;  // index into v
  if (t <= 0.0 && !piece.infinite_before) vertex = best_index;
  if (t >= 1.0 && !piece.infinite_after) vertex = best_index + 1;
  if (!vertex) return Cross(Sub(piece.b, piece.a), Sub(p, piece.a));
  const Vec2 at = v[*vertex];
  const Vec2 in = Sub(at, v[*vertex - 1]);
  const Vec2 out = Sub(v[*vertex + 1], at);
  const double s_in = Cross(in, Sub(p, at));
  const double s_out = Cross(out, Sub(p, at));
  const double turn = Cross(in, out);
  if (turn > 0.0) return std::min(s_in, s_out);  // left turn: left side is the wedge
  if (turn < 0.0) return std::max(s_in, s_out);
  return s_in;
}

// Even-odd test; boundary points count as inside.
int PolygonSide(const std::vector<Vec2>& v, Vec2 p) {
  const double scale = 1.0 + Norm(p);
  for (size_t i = 0; i < v.size(); ++i) {
    const Piece piece{v[i], v[(i + 1) % v.size()]};
    if (DistanceToPiece(piece, p) <= kEps * scale) return 0;
  }
  bool inside = false;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) /
                                    (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? 1 : -1;
}

// Proper or touching intersection between two pieces (rays included).
bool PiecesIntersect(const Piece& p, const Piece& q) {
  const Vec2 r = Sub(p.b, p.a);
  const Vec2 s = Sub(q.b, q.a);
  const double denom = Cross(r, s);
  const Vec2 qp = Sub(q.a, p.a);
  auto in_range = [](double t, const Piece& piece) {
    return (piece.infinite_before || t >= -1e-12) &&
           (piece.infinite_after || t <= 1.0 + 1e-12);
  };
  if (std::abs(denom) < 1e-15 * (Norm(r) * Norm(s) + 1e-300)) {
    // Parallel: intersect only if collinear and overlapping.
    if (std::abs(Cross(qp, r)) > 1e-12 * (1.0 + Norm(qp) * Norm(r))) {
      return false;
    }
    const double rr = Dot(r, r);
    const double t0 = Dot(qp, r) / rr;
    const double t1 = t0 + Dot(s, r) / rr;
    const double lo = std::min(t0, t1);
    const double hi = std::max(t0, t1);
    const bool q_unbounded = q.infinite_before || q.infinite_after;
    const double p_lo = p.infinite_before ? -INFINITY : 0.0;
    const double p_hi = p.infinite_after ? INFINITY : 1.0;
    if (q_unbounded) return true;
    return hi >= p_lo && lo <= p_hi;
  }
  const double t = Cross(qp, s) / denom;
  const double u = Cross(qp, r) / denom;
  return in_range(t, p) && in_range(u, q);
}

bool SelfIntersecting(const Region& region) {
  const std::vector<Piece> pieces = Pieces(region);
  const size_t m = pieces.size();
  const bool closed = region.shape == RegionShape::kPolygon;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      const bool adjacent = j == i + 1 || (closed && i == 0 && j == m - 1);
      if (adjacent) continue;
      if (PiecesIntersect(pieces[i], pieces[j])) return true;
    }
  }
  return false;
}

}  // namespace

bool Region::Contains(Vec2 p) const {
  if (shape == RegionShape::kPolygon) return PolygonSide(vertices, p) >= 0;
  return PolylineSide(vertices, p) >= 0.0;
}

bool Region::ContainsStrictly(Vec2 p) const {
  if (shape == RegionShape::kPolygon) return PolygonSide(vertices, p) > 0;
  return PolylineSide(vertices, p) > 0.0;
}

std::string CheckRegion(const Region& region) {
  const size_t needed = region.shape == RegionShape::kPolygon ? 3 : 2;
  if (region.vertices.size() < needed) {
    return fmt::format("region '{}' needs at least {} vertices", region.name,
                       needed);
  }
  for (const Vec2& v : region.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      return fmt::format("region '{}' has a non-finite vertex", region.name);
    }
  }
  for (size_t i = 0; i + 1 < region.vertices.size(); ++i) {
    if (region.vertices[i] == region.vertices[i + 1]) {
      return fmt::format("region '{}' repeats a vertex", region.name);
    }
  }
  if (region.shape == RegionShape::kPolygon) {
    double area = 0.0;
    const auto& v = region.vertices;
    for (size_t i = 0; i < v.size(); ++i) area += Cross(v[i], v[(i + 1) % v.size()]);
    if (std::abs(area) < kEps) {
      return fmt::format("region '{}' has zero area", region.name);
    }
  }
  if (SelfIntersecting(region)) {
    return fmt::format("region '{}' intersects itself", region.name);
  }
  return {};
}

bool RegionsOverlap(const Region& a, const Region& b) {
  // Two simple boundaries that never meet leave each region entirely on one
  // side of the other's boundary, so one probe point per side decides.
  for (const Piece& p : Pieces(a)) {
    for (const Piece& q : Pieces(b)) {
      if (PiecesIntersect(p, q)) return true;
    }
  }
  auto probe = [](const Region& r) {
    // A point just inside r: offset the midpoint of the first segment.
    const Vec2 a0 = r.vertices[0];
    const Vec2 a1 = r.vertices[1];
    const Vec2 mid{0.5 * (a0.x + a1.x), 0.5 * (a0.y + a1.y)};
    const Vec2 d = Sub(a1, a0);
    const double len = Norm(d);
    const Vec2 normal{-d.y / len, d.x / len};
    const double h = 1e-7 * (1.0 + len);
    const Vec2 left{mid.x + h * normal.x, mid.y + h * normal.y};
    if (r.ContainsStrictly(left)) return left;
    return Vec2{mid.x - h * normal.x, mid.y - h * normal.y};
  };
  return b.ContainsStrictly(probe(a)) || a.ContainsStrictly(probe(b)) ||
         b.Contains(a.vertices[0]) || a.Contains(b.vertices[0]);
}

}  // namespace debatenet::classify
