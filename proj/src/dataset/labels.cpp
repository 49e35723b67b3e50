// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <cstdio>

#include "drawparse/dataset.hpp"
#include "drawparse/notation.hpp"

namespace drawparse {
namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> number(std::string_view s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string format_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string class_header() {
  std::string out = "# classes:";
  for (Category c : kAllCategories) {
    out += " ";
    out += category_name(c);
  }
  return out;
}

std::vector<Detection> read_obb_labels(std::string_view text, int imageW, int imageH) {
  if (imageW <= 0 || imageH <= 0) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  }
  std::vector<Detection> out;
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string where = "line " + std::to_string(lineNo);
    auto f = fields(line);
    if (f.empty() || f[0][0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (f.size() != 9 && f.size() != 10) {
      throw Error(ErrorCode::BadLine,
                  "expected 9 or 10 fields, found " + std::to_string(f.size()), where);
    }
    int classId = -1;
    {
      auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), classId);
      if (ec != std::errc() || p != f[0].data() + f[0].size()) {
        throw Error(ErrorCode::BadLine, "class id must be an integer", where);
      }
    }
    auto cat = category_from_ordinal(classId);
    if (!cat) {
      throw Error(ErrorCode::UnknownClassId,
                  "class id " + std::to_string(classId) + " is not in 0-8", where);
    }
    std::array<Point, 4> corners;
    for (int k = 0; k < 8; ++k) {
      auto v = number(f[1 + k]);
      if (!v || *v < 0 || *v > 1) {
        throw Error(ErrorCode::BadLine,
                    "coordinate '" + std::string(f[1 + k]) + "' is not in [0,1]", where);
      }
      if (k % 2 == 0) {
        corners[k / 2].x = *v * imageW;
      } else {
        corners[k / 2].y = *v * imageH;
      }
    }
    double confidence = 1.0;
    if (f.size() == 10) {
      auto v = number(f[9]);
      if (!v || *v < 0 || *v > 1) {
        throw Error(ErrorCode::BadLine, "confidence must be in [0,1]", where);
      }
      confidence = *v;
    }
    try {
      out.push_back({*cat, confidence, obb_from_corners(corners)});
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), where);
    }
    if (end == text.size()) break;
  }
  return out;
}

std::string write_obb_labels(std::span<const Detection> detections, int imageW,
                             int imageH, bool withConfidence) {
  std::string out = class_header() + "\n";
  for (const auto& d : detections) {
    out += std::to_string(ordinal(d.category));
    for (const Point& p : box_corners(d.box)) {
      out += " " + format_coord(p.x / imageW);
      out += " " + format_coord(p.y / imageH);
    }
    if (withConfidence) out += " " + format_coord(d.confidence);
    out += "\n";
  }
  return out;
}

DatasetStats stats_from_counts(const std::array<long long, kCategoryCount>& counts,
                               long long drawings) {
  DatasetStats s;
  s.perCategoryCount = counts;
  for (long long c : counts) s.totalAnnotations += c;
  s.drawingsCount = drawings;
  s.meanPatchesPerDrawing =
      drawings > 0 ? static_cast<double>(s.totalAnnotations) / static_cast<double>(drawings)
                   : 0.0;
  return s;
}

DatasetStats category_histogram(std::span<const LabeledDrawing> drawings) {
  std::array<long long, kCategoryCount> counts{};
  for (const auto& d : drawings) {
    for (const auto& det : d.detections) counts[static_cast<std::size_t>(ordinal(det.category))]++;
  }
  return stats_from_counts(counts, static_cast<long long>(drawings.size()));
}

DatasetStats merge_stats(const DatasetStats& a, const DatasetStats& b) {
  std::array<long long, kCategoryCount> counts{};
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    counts[i] = a.perCategoryCount[i] + b.perCategoryCount[i];
  }
  return stats_from_counts(counts, a.drawingsCount + b.drawingsCount);
}

}  // namespace drawparse
