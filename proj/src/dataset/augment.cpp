// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>

#include "drawparse/dataset.hpp"

namespace drawparse {
namespace {

/// Uniform in [0,1) from the top 53 bits; independent of the standard
/// library's distribution implementations.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::uint8_t clamp_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Luma per pixel, 0..255, integer Rec. 601.
int luma(const RasterPatch& p, int x, int y) {
  if (p.channels == 1) return p.at(x, y);
  return (299 * p.at(x, y, 0) + 587 * p.at(x, y, 1) + 114 * p.at(x, y, 2) + 500) / 1000;
}

}  // namespace

std::string_view augment_kind_name(AugmentKind k) noexcept {
  switch (k) {
    case AugmentKind::Sharpness: return "sharpness";
    case AugmentKind::Contrast: return "contrast";
    case AugmentKind::Rotation: return "rotation";
    case AugmentKind::Grayscale: return "grayscale";
    case AugmentKind::Inversion: return "inversion";
  }
  return "";
}

std::optional<AugmentKind> parse_augment_kind(std::string_view name) noexcept {
  for (AugmentKind k : {AugmentKind::Sharpness, AugmentKind::Contrast, AugmentKind::Rotation,
                        AugmentKind::Grayscale, AugmentKind::Inversion}) {
    if (augment_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<AugmentationOp> default_pipeline() {
  std::vector<AugmentationOp> ops(5);
  ops[0].kind = AugmentKind::Sharpness;
  ops[1].kind = AugmentKind::Contrast;
  ops[1].applyProbability = 0.5;
  ops[2].kind = AugmentKind::Rotation;
  ops[3].kind = AugmentKind::Grayscale;
  ops[3].applyProbability = 0.5;
  ops[4].kind = AugmentKind::Inversion;
  ops[4].applyProbability = 0.5;
  return ops;
}

void validate_pipeline(std::span<const AugmentationOp> pipeline) {
  if (pipeline.empty()) throw Error(ErrorCode::InvalidArgument, "pipeline is empty");
  for (const auto& op : pipeline) {
    const std::string name(augment_kind_name(op.kind));
    if (!(op.applyProbability >= 0 && op.applyProbability <= 1)) {
      throw Error(ErrorCode::InvalidArgument, name + ": probability must be in [0,1]");
    }
    if (op.kind == AugmentKind::Rotation) {
      if (op.angles.empty()) throw Error(ErrorCode::InvalidArgument, "rotation: no angles");
      for (int a : op.angles) {
        if (a != 0 && a != 90 && a != 180 && a != 270) {
          throw Error(ErrorCode::InvalidArgument,
                      "rotation: angle " + std::to_string(a) + " is not a right angle");
        }
      }
    }
    if ((op.kind == AugmentKind::Sharpness || op.kind == AugmentKind::Contrast) &&
        !(op.minFactor >= 0 && op.minFactor <= op.maxFactor)) {
      throw Error(ErrorCode::InvalidArgument, name + ": factor range must be 0 <= min <= max");
    }
  }
}

RasterPatch rotate_quarter_turns(const RasterPatch& p, int quarterTurns) {
  const int k = ((quarterTurns % 4) + 4) % 4;
  if (k == 0) return p;
  const bool swap = k % 2 == 1;
  RasterPatch out = make_raster(swap ? p.height : p.width, swap ? p.width : p.height, p.channels);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      // Counterclockwise on screen.
      int nx = 0, ny = 0;
      switch (k) {
        case 1: nx = y; ny = p.width - 1 - x; break;
        case 2: nx = p.width - 1 - x; ny = p.height - 1 - y; break;
        case 3: nx = p.height - 1 - y; ny = x; break;
      }
      for (int c = 0; c < p.channels; ++c) out.at(nx, ny, c) = p.at(x, y, c);
    }
  }
  return out;
}

RasterPatch invert(const RasterPatch& p) {
  RasterPatch out = p;
  for (auto& v : out.pixels) v = static_cast<std::uint8_t>(255 - v);
  return out;
}

RasterPatch grayscale(const RasterPatch& p) {
  if (p.channels == 1) return p;
  RasterPatch out = p;
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      const auto v = static_cast<std::uint8_t>(luma(p, x, y));
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = v;
    }
  }
  return out;
}

RasterPatch sharpen(const RasterPatch& p, double factor) {
  RasterPatch out = p;
  if (p.width < 3 || p.height < 3) return out;
  // Smoothing kernel [1 1 1; 1 5 1; 1 1 1] / 13; border pixels stay as-is.
  for (int y = 1; y + 1 < p.height; ++y) {
    for (int x = 1; x + 1 < p.width; ++x) {
      for (int c = 0; c < p.channels; ++c) {
        int sum = 4 * p.at(x, y, c);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) sum += p.at(x + dx, y + dy, c);
        }
        const double blurred = sum / 13.0;
        out.at(x, y, c) = clamp_byte(blurred + factor * (p.at(x, y, c) - blurred));
      }
    }
  }
  return out;
}

RasterPatch adjust_contrast(const RasterPatch& p, double factor) {
  long long total = 0;
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) total += luma(p, x, y);
  }
  const double mean =
      static_cast<double>(total) / (static_cast<double>(p.width) * p.height);
  RasterPatch out = p;
  for (auto& v : out.pixels) v = clamp_byte(mean + factor * (v - mean));
  return out;
}

RasterPatch augment(const RasterPatch& patch, std::span<const AugmentationOp> pipeline,
                    std::uint64_t seed) {
  validate_pipeline(pipeline);
  if (!patch.valid()) throw Error(ErrorCode::InvalidArgument, "invalid patch");
  std::mt19937_64 gen(seed);
  RasterPatch cur = patch;
  for (const auto& op : pipeline) {
    // Both draws happen for every op so the stream layout never depends on
    // earlier outcomes.
    const bool apply = uniform01(gen) < op.applyProbability;
    const double u = uniform01(gen);
    if (!apply) continue;
    switch (op.kind) {
      case AugmentKind::Sharpness:
        cur = sharpen(cur, op.minFactor + u * (op.maxFactor - op.minFactor));
        break;
      case AugmentKind::Contrast:
        cur = adjust_contrast(cur, op.minFactor + u * (op.maxFactor - op.minFactor));
        break;
      case AugmentKind::Rotation: {
        const auto i = std::min(op.angles.size() - 1,
                                static_cast<std::size_t>(u * static_cast<double>(op.angles.size())));
        cur = rotate_quarter_turns(cur, op.angles[i] / 90);
        break;
      }
      case AugmentKind::Grayscale: cur = grayscale(cur); break;
      case AugmentKind::Inversion: cur = invert(cur); break;
    }
  }
  return cur;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view key) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ h);
}

}  // namespace drawparse
