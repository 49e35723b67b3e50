// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Oriented boxes, rotated IoU, patch crops, and detection scoring
// (matching, confusion matrices, average precision).

#pragma once

#include <array>
#include <span>
#include <vector>

#include "drawparse/schema.hpp"

namespace drawparse {

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

/// theta is counterclockwise from +x to the w edge. Canonical boxes have
/// w >= h and theta in [-pi/2, pi/2); squares are further reduced to
/// [-pi/4, pi/4).
struct OrientedBox {
  double cx = 0;
  double cy = 0;
  double w = 0;
  double h = 0;
  double theta = 0;
  bool operator==(const OrientedBox&) const = default;
};

/// Relative side-length tolerance used by obb_from_corners.
inline constexpr double kRectangleTolerance = 1e-3;

/// Throws Error{DegenerateBox} unless w > 0 and h > 0.
OrientedBox make_box(double cx, double cy, double w, double h, double theta);
/// Corners in counterclockwise order starting at center - w/2 - h/2.
std::array<Point, 4> box_corners(const OrientedBox& box);
/// Throws Error{DegenerateBox} or Error{NotARectangle}.
OrientedBox obb_from_corners(const std::array<Point, 4>& corners);

/// Signed shoelace area; positive for counterclockwise polygons.
double polygon_area(std::span<const Point> polygon);
/// Sutherland-Hodgman clip of subject by a convex counterclockwise clip polygon.
std::vector<Point> clip_convex(std::span<const Point> subject,
                               std::span<const Point> clip);
double rotated_iou(const OrientedBox& a, const OrientedBox& b);

struct Detection {
  Category category = Category::GDT;
  double confidence = 1.0;
  OrientedBox box;
  bool operator==(const Detection&) const = default;
};

struct PatchCrop {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
  OrientedBox sourceBox;
  double marginFraction = 0;
  int width() const noexcept { return x1 - x0; }
  int height() const noexcept { return y1 - y0; }
};

inline constexpr double kDefaultMarginFraction = 0.05;

/// Throws Error{EmptyCrop} when nothing of the expanded box is on the image,
/// Error{InvalidArgument} for a negative margin or empty image.
PatchCrop crop_rect(const OrientedBox& box, double marginFraction, int imageW,
                    int imageH);

// ---------------------------------------------------------------------------
// Scoring

struct MatchPair {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double iou = 0;
};

struct MatchAssignment {
  std::vector<MatchPair> pairs;  // in matching order
  std::vector<std::size_t> unmatchedPred;
  std::vector<std::size_t> unmatchedGt;
};

/// Greedy by descending confidence (lower index first on ties); each
/// prediction takes the unmatched ground truth of highest IoU regardless of
/// class. Throws Error{InvalidArgument} unless threshold is in (0, 1].
MatchAssignment match_detections(std::span<const Detection> preds,
                                 std::span<const Detection> gts,
                                 double iouThreshold);

/// Nine categories in ordinal order followed by background.
struct ConfusionMatrix {
  static constexpr std::size_t kSize = kCategoryCount + 1;
  static constexpr std::size_t kBackground = kCategoryCount;
  std::array<std::array<long long, kSize>, kSize> counts{};  // [true][pred]

  long long total() const noexcept;
  /// Rows divided by their sums; empty rows stay zero.
  std::array<std::array<double, kSize>, kSize> normalized() const noexcept;
};

ConfusionMatrix confusion_matrix(const MatchAssignment& assignment,
                                 std::span<const Detection> preds,
                                 std::span<const Detection> gts);

/// Detections of one drawing.
struct ScoredImage {
  std::vector<Detection> preds;
  std::vector<Detection> gts;
};

/// 101-point interpolated AP for one class. Returns 0 when the class has
/// no ground truth.
double average_precision(std::span<const ScoredImage> images, Category category,
                         double iouThreshold);
double average_precision(std::span<const Detection> preds,
                         std::span<const Detection> gts, Category category,
                         double iouThreshold);
/// Mean AP over classes with at least one ground truth at one threshold.
double mean_average_precision(std::span<const ScoredImage> images,
                              double iouThreshold);
/// Mean of mean_average_precision over thresholds. Throws
/// Error{InvalidArgument} on an empty threshold list.
double map_range(std::span<const ScoredImage> images,
                 std::span<const double> thresholds);
double map_range(std::span<const Detection> preds, std::span<const Detection> gts,
                 std::span<const double> thresholds);
/// 0.50, 0.55, ..., 0.95.
std::vector<double> coco_thresholds();

}  // namespace drawparse
