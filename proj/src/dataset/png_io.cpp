// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "drawparse/dataset.hpp"

namespace drawparse {
namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

RasterPatch decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::IoError, std::string("PNG decode: ") + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  RasterPatch r;
  r.width = static_cast<int>(image.width);
  r.height = static_cast<int>(image.height);
  r.channels = color ? 3 : 1;
  r.pixels.resize(PNG_IMAGE_SIZE(image));
  png_color background{255, 255, 255};
  if (!png_image_finish_read(&image, &background, r.pixels.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::IoError, "PNG decode: " + msg);
  }
  return r;
}

std::vector<std::uint8_t> encode_png(const RasterPatch& raster) {
  if (!raster.valid()) throw Error(ErrorCode::InvalidArgument, "invalid raster");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width);
  image.height = static_cast<png_uint_32>(raster.height);
  image.format = raster.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, raster.pixels.data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, raster.pixels.data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

RasterPatch read_png(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_png(bytes);
  } catch (const Error& e) {
    throw Error(ErrorCode::IoError, e.detail(), path.string());
  }
}

void write_png(const std::filesystem::path& path, const RasterPatch& raster) {
  const auto bytes = encode_png(raster);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

std::pair<int, int> png_dimensions(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::IoError, std::string("PNG header: ") + image.message,
                path.string());
  }
  const std::pair<int, int> dims{static_cast<int>(image.width),
                                 static_cast<int>(image.height)};
  png_image_free(&image);
  return dims;
}

}  // namespace drawparse
