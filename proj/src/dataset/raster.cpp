// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "drawparse/dataset.hpp"

namespace drawparse {

bool RasterPatch::valid() const noexcept {
  return width > 0 && height > 0 && (channels == 1 || channels == 3) &&
         pixels.size() == static_cast<std::size_t>(width) * height * channels;
}

RasterPatch make_raster(int width, int height, int channels, std::uint8_t fill) {
  if (width <= 0 || height <= 0 || (channels != 1 && channels != 3)) {
    throw Error(ErrorCode::InvalidArgument, "raster needs positive size and 1 or 3 channels");
  }
  RasterPatch r;
  r.width = width;
  r.height = height;
  r.channels = channels;
  r.pixels.assign(static_cast<std::size_t>(width) * height * channels, fill);
  return r;
}

RasterPatch extract_patch(const RasterPatch& image, const OrientedBox& box,
                          double marginFraction, bool rectify) {
  if (!image.valid()) throw Error(ErrorCode::InvalidArgument, "invalid image");
  const PatchCrop crop = crop_rect(box, marginFraction, image.width, image.height);
  if (!rectify) {
    RasterPatch out = make_raster(crop.width(), crop.height(), image.channels);
    const std::size_t row = static_cast<std::size_t>(crop.width()) * image.channels;
    for (int y = 0; y < crop.height(); ++y) {
      const auto* src = &image.pixels[(static_cast<std::size_t>(crop.y0 + y) * image.width +
                                       crop.x0) * image.channels];
      std::copy(src, src + row, &out.pixels[static_cast<std::size_t>(y) * row]);
    }
    return out;
  }
  const double m = marginFraction * std::max(box.w, box.h);
  const int ow = std::max(1, static_cast<int>(std::ceil(box.w + 2 * m - 1e-9)));
  const int oh = std::max(1, static_cast<int>(std::ceil(box.h + 2 * m - 1e-9)));
  RasterPatch out = make_raster(ow, oh, image.channels, 255);
  const double c = std::cos(box.theta), s = std::sin(box.theta);
  for (int j = 0; j < oh; ++j) {
    for (int i = 0; i < ow; ++i) {
      const double u = i + 0.5 - ow / 2.0;
      const double v = j + 0.5 - oh / 2.0;
      const double x = box.cx + u * c - v * s;
      const double y = box.cy + u * s + v * c;
      const int sx = static_cast<int>(std::floor(x));
      const int sy = static_cast<int>(std::floor(y));
      if (sx < 0 || sy < 0 || sx >= image.width || sy >= image.height) continue;
      for (int ch = 0; ch < image.channels; ++ch) out.at(i, j, ch) = image.at(sx, sy, ch);
    }
  }
  return out;
}

}  // namespace drawparse
