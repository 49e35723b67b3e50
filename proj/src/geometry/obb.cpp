// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>

#include "drawparse/geometry.hpp"

namespace drawparse {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSquareTolerance = 1e-9;

bool is_square(double w, double h) {
  return std::abs(w - h) <= kSquareTolerance * std::max(w, h);
}

/// Reduces theta into [-period/2, period/2).
double wrap(double theta, double period) {
  double t = theta - period * std::floor((theta + period / 2) / period);
  if (t >= period / 2) t -= period;
  if (t < -period / 2) t = -period / 2;
  return t;
}

/// Flips an edge direction into the half-plane that yields theta in
/// [-pi/2, pi/2). Exact negation keeps the result bit-stable.
Point half_plane(Point d) {
  if (d.x < 0 || (d.x == 0 && d.y > 0)) return {-d.x, -d.y};
  return d;
}

Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
double norm(Point a) { return std::hypot(a.x, a.y); }

}  // namespace

OrientedBox make_box(double cx, double cy, double w, double h, double theta) {
  if (!(w > 0) || !(h > 0) || !std::isfinite(w) || !std::isfinite(h) ||
      !std::isfinite(theta) || !std::isfinite(cx) || !std::isfinite(cy)) {
    throw Error(ErrorCode::DegenerateBox, "box sides must be positive and finite");
  }
  if (w < h) {
    std::swap(w, h);
    theta += kPi / 2;
  }
  theta = is_square(w, h) ? wrap(theta, kPi / 2) : wrap(theta, kPi);
  return {cx, cy, w, h, theta};
}

std::array<Point, 4> box_corners(const OrientedBox& b) {
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const double ux = c * b.w / 2, uy = s * b.w / 2;
  const double vx = -s * b.h / 2, vy = c * b.h / 2;
  return {{{b.cx - ux - vx, b.cy - uy - vy},
           {b.cx + ux - vx, b.cy + uy - vy},
           {b.cx + ux + vx, b.cy + uy + vy},
           {b.cx - ux + vx, b.cy - uy + vy}}};
}

OrientedBox obb_from_corners(const std::array<Point, 4>& p) {
  std::array<Point, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = sub(p[(i + 1) % 4], p[i]);
  std::array<double, 4> len;
  for (int i = 0; i < 4; ++i) len[i] = norm(e[i]);
  const double longest = *std::max_element(len.begin(), len.end());
  const double area = std::abs(polygon_area(p));
  if (longest == 0 || area <= 1e-12 * longest * longest) {
    throw Error(ErrorCode::DegenerateBox, "corners enclose no area");
  }
  const double tol = kRectangleTolerance * longest;
  if (norm({e[0].x + e[2].x, e[0].y + e[2].y}) > tol ||
      norm({e[1].x + e[3].x, e[1].y + e[3].y}) > tol) {
    throw Error(ErrorCode::NotARectangle, "opposite sides differ beyond tolerance");
  }
  const double dot = e[0].x * e[1].x + e[0].y * e[1].y;
  if (std::abs(dot) > kRectangleTolerance * len[0] * len[1]) {
    throw Error(ErrorCode::NotARectangle, "adjacent sides are not perpendicular");
  }

  // Everything below is symmetric in start corner and winding so both give
  // bit-identical boxes.
  std::array<Point, 4> sorted = p;
  std::sort(sorted.begin(), sorted.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const double cx = ((sorted[0].x + sorted[1].x) + (sorted[2].x + sorted[3].x)) / 4;
  const double cy = ((sorted[0].y + sorted[1].y) + (sorted[2].y + sorted[3].y)) / 4;

  const double sideA = (len[0] + len[2]) / 2;
  const double sideB = (len[1] + len[3]) / 2;
  const Point dirA = half_plane(sub(e[0], e[2]));
  const Point dirB = half_plane(sub(e[1], e[3]));

  auto angle_of = [](Point d) {
    double t = std::atan2(d.y, d.x);
    return t >= kPi / 2 ? -kPi / 2 : t;
  };

  if (is_square(sideA, sideB)) {
    const double side = (sideA + sideB) / 2;
    // Pick the edge nearer horizontal, so theta falls in [-pi/4, pi/4).
    auto closer = [](Point a, Point b) {
      const double ka = std::abs(a.y) - std::abs(a.x);
      const double kb = std::abs(b.y) - std::abs(b.x);
      if (ka != kb) return ka < kb;
      return a.y < b.y;
    };
    const Point d = closer(dirA, dirB) ? dirA : dirB;
    double theta = angle_of(d);
    if (theta >= kPi / 4) theta = wrap(theta, kPi / 2);
    return {cx, cy, side, side, theta};
  }
  if (sideA > sideB) return {cx, cy, sideA, sideB, angle_of(dirA)};
  return {cx, cy, sideB, sideA, angle_of(dirB)};
}

PatchCrop crop_rect(const OrientedBox& box, double marginFraction, int imageW,
                    int imageH) {
  if (!(marginFraction >= 0) || imageW <= 0 || imageH <= 0) {
    throw Error(ErrorCode::InvalidArgument,
                "margin must be >= 0 and image dimensions positive");
  }
  const auto corners = box_corners(box);
  double minx = corners[0].x, maxx = minx, miny = corners[0].y, maxy = miny;
  for (const auto& c : corners) {
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, c.y);
    maxy = std::max(maxy, c.y);
  }
  const double m = marginFraction * std::max(box.w, box.h);
  // Snap within 1e-9 px so exact corners do not spill into a neighbouring pixel.
  constexpr double kSnap = 1e-9;
  const double fx0 = std::floor(minx - m + kSnap);
  const double fy0 = std::floor(miny - m + kSnap);
  const double fx1 = std::ceil(maxx + m - kSnap);
  const double fy1 = std::ceil(maxy + m - kSnap);
  PatchCrop crop;
  crop.sourceBox = box;
  crop.marginFraction = marginFraction;
  crop.x0 = static_cast<int>(std::clamp(fx0, 0.0, static_cast<double>(imageW)));
  crop.y0 = static_cast<int>(std::clamp(fy0, 0.0, static_cast<double>(imageH)));
  crop.x1 = static_cast<int>(std::clamp(fx1, 0.0, static_cast<double>(imageW)));
  crop.y1 = static_cast<int>(std::clamp(fy1, 0.0, static_cast<double>(imageH)));
  if (crop.x0 >= crop.x1 || crop.y0 >= crop.y1) {
    throw Error(ErrorCode::EmptyCrop, "box lies outside the image");
  }
  return crop;
}

}  // namespace drawparse
