// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Rasters, OBB label files, patch extraction, dataset statistics, seeded
// augmentation, and image/label pair assembly.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drawparse/geometry.hpp"
#include "drawparse/schema.hpp"

namespace drawparse {

/// 8-bit row-major raster with 1 (gray) or 3 (RGB) interleaved channels.
struct RasterPatch {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  bool valid() const noexcept;
  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  bool operator==(const RasterPatch&) const = default;
};

/// Throws Error{InvalidArgument} on non-positive size or channels not 1/3.
RasterPatch make_raster(int width, int height, int channels, std::uint8_t fill = 0);

/// PNG codec. Alpha is composited onto white; palettes and 16-bit depths are
/// reduced to 8-bit gray or RGB. Throws Error{IoError}.
RasterPatch decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const RasterPatch& raster);
RasterPatch read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const RasterPatch& raster);
/// Reads only the header. Throws Error{IoError}.
std::pair<int, int> png_dimensions(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Labels

struct LabeledDrawing {
  std::string imageRef;
  int imageW = 0;
  int imageH = 0;
  std::vector<Detection> detections;
};

/// "# classes: GDT GeneralTolerance ... TitleBlock"
std::string class_header();

/// One "classId x1 y1 ... x4 y4 [confidence]" line per detection, corners
/// normalized to [0,1]. Blank lines and '#' comments are skipped. Throws
/// Error{BadLine} (path "line N"), Error{UnknownClassId}, or the geometry
/// errors of obb_from_corners tagged with the line.
std::vector<Detection> read_obb_labels(std::string_view text, int imageW, int imageH);
/// Inverse of read_obb_labels; corners written with 9 significant digits.
std::string write_obb_labels(std::span<const Detection> detections, int imageW,
                             int imageH, bool withConfidence = true);

// ---------------------------------------------------------------------------
// Statistics

struct DatasetStats {
  std::array<long long, kCategoryCount> perCategoryCount{};
  long long totalAnnotations = 0;
  long long drawingsCount = 0;
  double meanPatchesPerDrawing = 0;  // 0 when there are no drawings

  long long count(Category c) const noexcept {
    return perCategoryCount[static_cast<std::size_t>(ordinal(c))];
  }
  bool operator==(const DatasetStats&) const = default;
};

DatasetStats category_histogram(std::span<const LabeledDrawing> drawings);
/// Builds stats from per-category totals.
DatasetStats stats_from_counts(const std::array<long long, kCategoryCount>& counts,
                               long long drawings);
/// Commutative merge.
DatasetStats merge_stats(const DatasetStats& a, const DatasetStats& b);

// ---------------------------------------------------------------------------
// Patches

/// Copies the crop_rect region. With rectify, samples the box (plus margin)
/// upright by nearest neighbour instead; pixels outside the image are white.
RasterPatch extract_patch(const RasterPatch& image, const OrientedBox& box,
                          double marginFraction, bool rectify = false);

// ---------------------------------------------------------------------------
// Augmentation

enum class AugmentKind : std::uint8_t { Sharpness, Contrast, Rotation, Grayscale, Inversion };

std::string_view augment_kind_name(AugmentKind k) noexcept;
std::optional<AugmentKind> parse_augment_kind(std::string_view name) noexcept;

struct AugmentationOp {
  AugmentKind kind = AugmentKind::Rotation;
  double applyProbability = 1.0;
  double minFactor = 0.5;  // sharpness and contrast
  double maxFactor = 2.0;
  std::vector<int> angles = {0, 90, 180, 270};  // rotation, degrees
};

/// Sharpness and rotation always apply; contrast, grayscale and inversion
/// at probability 0.5.
std::vector<AugmentationOp> default_pipeline();
/// Throws Error{InvalidArgument} for probabilities outside [0,1], an empty
/// or non-right angle set, or an inverted factor range.
void validate_pipeline(std::span<const AugmentationOp> pipeline);

/// Ops applied in order; every random draw comes from a generator seeded
/// with seed. Throws Error{InvalidArgument} for an empty pipeline.
RasterPatch augment(const RasterPatch& patch, std::span<const AugmentationOp> pipeline,
                    std::uint64_t seed);

RasterPatch rotate_quarter_turns(const RasterPatch& patch, int quarterTurns);
RasterPatch invert(const RasterPatch& patch);
/// Rec. 601 luma; keeps the channel count.
RasterPatch grayscale(const RasterPatch& patch);
/// Blend between a 3x3 smoothed copy (factor 0) and the original (factor 1).
RasterPatch sharpen(const RasterPatch& patch, double factor);
/// Scales each sample about the mean luma.
RasterPatch adjust_contrast(const RasterPatch& patch, double factor);

/// Per-item seed derived from the run seed and a stable item key.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

// ---------------------------------------------------------------------------
// Pairs

struct ImageJsonPair {
  std::string id;
  Category category = Category::GDT;
  std::size_t detectionIndex = 0;
  RasterPatch patch;
  AnnotationRecord label;
};

struct PairBuild {
  std::vector<ImageJsonPair> pairs;
  std::size_t skipped = 0;  // detections without a label
};

/// One pair per labelled detection, ids "<stem>_<index>". Throws
/// Error{CategoryMismatch} naming every offending index, or
/// Error{SchemaViolation} for records that fail validation.
PairBuild build_pairs(const LabeledDrawing& drawing,
                      const std::map<std::size_t, AnnotationRecord>& labels,
                      const RasterPatch& image,
                      double marginFraction = kDefaultMarginFraction,
                      bool rectify = false);

/// Writes <root>/<Category>/<id>.png and .json (patch dialect). Returns the
/// written paths in order.
std::vector<std::filesystem::path> write_pairs(const std::filesystem::path& root,
                                               std::span<const ImageJsonPair> pairs);

struct PairFile {
  Category category;
  std::string id;
  std::filesystem::path png;
  std::filesystem::path json;
};

/// Lists pairs under root sorted by (category ordinal, id).
std::vector<PairFile> list_pairs(const std::filesystem::path& root);

}  // namespace drawparse
