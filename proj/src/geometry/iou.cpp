// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <tuple>

#include "drawparse/geometry.hpp"

namespace drawparse {
namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Point intersect(Point p, Point q, Point a, Point b) {
  // Line pq against line ab.
  const double d1 = cross(a, b, p);
  const double d2 = cross(a, b, q);
  const double t = d1 / (d1 - d2);
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

}  // namespace

double polygon_area(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return s / 2;
}

std::vector<Point> clip_convex(std::span<const Point> subject,
                               std::span<const Point> clip) {
  std::vector<Point> out(subject.begin(), subject.end());
  const std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    const Point a = clip[i];
    const Point b = clip[(i + 1) % n];
    std::vector<Point> in = std::move(out);
    out.clear();
    for (std::size_t j = 0; j < in.size(); ++j) {
      const Point p = in[j];
      const Point q = in[(j + 1) % in.size()];
      const bool pin = cross(a, b, p) >= 0;
      const bool qin = cross(a, b, q) >= 0;
      if (pin) out.push_back(p);
      if (pin != qin) out.push_back(intersect(p, q, a, b));
    }
  }
  return out;
}

double rotated_iou(const OrientedBox& a0, const OrientedBox& b0) {
  if (a0 == b0) return 1.0;
  // Fixed argument order makes the result exactly symmetric.
  const auto key = [](const OrientedBox& b) {
    return std::tie(b.cx, b.cy, b.w, b.h, b.theta);
  };
  const bool swap = key(b0) < key(a0);
  const OrientedBox& a = swap ? b0 : a0;
  const OrientedBox& b = swap ? a0 : b0;

  const double ra = std::hypot(a.w, a.h) / 2;
  const double rb = std::hypot(b.w, b.h) / 2;
  if (std::hypot(a.cx - b.cx, a.cy - b.cy) > ra + rb) return 0.0;

  const auto pa = box_corners(a);
  const auto pb = box_corners(b);
  const double areaA = a.w * a.h;
  const double areaB = b.w * b.h;
  const auto inter_poly = clip_convex(pa, pb);
  const double inter = std::max(0.0, polygon_area(inter_poly));
  const double uni = areaA + areaB - inter;
  if (!(uni > 0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace drawparse
