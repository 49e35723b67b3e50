// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// File-output visualization: SVG detection overlays and HTML / CSV tables
// for metrics reports, detection summaries and recommendations.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drawparse/decide.hpp"
#include "drawparse/eval.hpp"
#include "drawparse/geometry.hpp"

namespace drawparse {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

/// "#rrggbb", lower case.
std::string rgb_hex(Rgb c);

struct OverlayStyle {
  std::array<Rgb, kCategoryCount> colors;  // by ordinal
  double strokeWidth = 2.0;
  double fontSize = 12.0;
  /// {category} and {confidence} are substituted.
  std::string labelFormat = "{category} {confidence}";
  bool legend = true;
};

/// Fixed hue per category ordinal.
OverlayStyle default_overlay_style();
/// {"colors": {"GDT": "#rrggbb", ...}, "strokeWidth", "fontSize",
/// "labelFormat", "legend"}; missing keys keep defaults. Throws
/// Error{MalformedJson}, Error{SchemaViolation} (including colors that are
/// not mutually distinct).
OverlayStyle parse_overlay_style(std::string_view json);
OverlayStyle load_overlay_style(const std::filesystem::path& path);

/// Half-up to two decimals: 0.9492 -> "0.95".
std::string format_confidence(double confidence);
/// Half-up percentage with two decimals: 0.9537 -> "95.37%".
std::string format_percent(double fraction);
/// Label text before XML escaping, e.g. "GD&Ts 0.95".
std::string overlay_label(const Detection& d, const OverlayStyle& style);

/// SVG 1.1. The raster is referenced by link (omitted when imageHref is
/// empty); one closed path plus one label per detection in input order; a
/// legend follows when there are detections and style.legend is set.
std::string render_overlay(std::span<const Detection> detections, int imageWidth,
                           int imageHeight, const OverlayStyle& style,
                           std::string_view imageHref = {});

struct DetectionSummaryRow {
  Category category = Category::GDT;
  std::size_t count = 0;
  double meanConfidence = 0;
};

/// Categories with at least one detection, in ordinal order.
std::vector<DetectionSummaryRow> summarize_detections(std::span<const Detection> detections);

/// Rows for categories with counts, then Overall when any row exists.
std::string render_report_html(const MetricsReport& report);
std::string render_report_csv(const MetricsReport& report);
/// Class, Count, Avg. Confidence.
std::string render_detection_summary_html(std::span<const DetectionSummaryRow> rows);
std::string render_detection_summary_csv(std::span<const DetectionSummaryRow> rows);
/// Feature, Rules, Operations, Tools, Parameters.
std::string render_recommendations_html(std::span<const Recommendation> recs);
std::string render_recommendations_csv(std::span<const Recommendation> recs);

std::string xml_escape(std::string_view text);

}  // namespace drawparse
