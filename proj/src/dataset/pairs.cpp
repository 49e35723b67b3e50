// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>

#include "drawparse/dataset.hpp"

namespace drawparse {

PairBuild build_pairs(const LabeledDrawing& drawing,
                      const std::map<std::size_t, AnnotationRecord>& labels,
                      const RasterPatch& image, double marginFraction, bool rectify) {
  std::string mismatched;
  for (const auto& [idx, record] : labels) {
    if (idx >= drawing.detections.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "label for detection " + std::to_string(idx) + " which does not exist");
    }
    if (category_of(record) != drawing.detections[idx].category) {
      if (!mismatched.empty()) mismatched += ", ";
      mismatched += std::to_string(idx);
    }
  }
  if (!mismatched.empty()) {
    throw Error(ErrorCode::CategoryMismatch,
                "record category differs from detection category at index " + mismatched);
  }
  const std::string stem = std::filesystem::path(drawing.imageRef).stem().string();
  PairBuild out;
  for (std::size_t i = 0; i < drawing.detections.size(); ++i) {
    auto it = labels.find(i);
    if (it == labels.end()) {
      ++out.skipped;
      continue;
    }
    const Detection& d = drawing.detections[i];
    const auto result = validate_record(d.category, it->second);
    if (!result.ok()) {
      throw Error(ErrorCode::SchemaViolation, result.violations.front().message,
                  "labels." + std::to_string(i) + "." + result.violations.front().path);
    }
    ImageJsonPair pair;
    pair.id = (stem.empty() ? std::string("drawing") : stem) + "_" + std::to_string(i);
    pair.category = d.category;
    pair.detectionIndex = i;
    pair.patch = extract_patch(image, d.box, marginFraction, rectify);
    pair.label = it->second;
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

std::vector<std::filesystem::path> write_pairs(const std::filesystem::path& root,
                                               std::span<const ImageJsonPair> pairs) {
  std::vector<std::filesystem::path> written;
  for (const auto& p : pairs) {
    const auto dir = root / std::string(category_name(p.category));
    std::filesystem::create_directories(dir);
    const auto png = dir / (p.id + ".png");
    const auto json = dir / (p.id + ".json");
    write_png(png, p.patch);
    std::ofstream out(json, std::ios::binary);
    out << serialize_patch_label(p.label);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + json.string());
    written.push_back(png);
    written.push_back(json);
  }
  return written;
}

std::vector<PairFile> list_pairs(const std::filesystem::path& root) {
  std::vector<PairFile> out;
  if (!std::filesystem::is_directory(root)) {
    throw Error(ErrorCode::IoError, "not a directory: " + root.string());
  }
  for (Category c : kAllCategories) {
    const auto dir = root / std::string(category_name(c));
    if (!std::filesystem::is_directory(dir)) continue;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() != ".png") continue;
      PairFile f{c, entry.path().stem().string(), entry.path(), entry.path()};
      f.json.replace_extension(".json");
      out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end(), [](const PairFile& a, const PairFile& b) {
    if (a.category != b.category) return ordinal(a.category) < ordinal(b.category);
    return a.id < b.id;
  });
  return out;
}

}  // namespace drawparse
