// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>

#include "drawparse/schema.hpp"

namespace drawparse {
namespace {

struct CategoryNames {
  std::string_view id;
  std::string_view display;
  std::string_view patch;
  std::string_view document;
};

constexpr std::array<CategoryNames, kCategoryCount> kNames = {{
    {"GDT", "GD&Ts", "GD&Ts", "GD&T"},
    {"GeneralTolerance", "General Tolerances", "General Tolerance",
     "General Tolerance"},
    {"Measure", "Measures", "Measures", "Measures"},
    {"Material", "Material", "Material", "Material"},
    {"Note", "Notes", "Notes", "Notes"},
    {"Radius", "Radii", "Radii", "Radii"},
    {"SurfaceRoughness", "Surface Roughness", "Surface Roughness",
     "Surface Roughness"},
    {"Thread", "Threads", "Threads", "Threads"},
    {"TitleBlock", "Title Block", "Title Block", "Title Block"},
}};

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::optional<Category> category_from_ordinal(int id) noexcept {
  if (id < 0 || id >= static_cast<int>(kCategoryCount)) return std::nullopt;
  return static_cast<Category>(id);
}

std::string_view category_name(Category c) noexcept {
  return kNames[ordinal(c)].id;
}

std::string_view category_display_name(Category c) noexcept {
  return kNames[ordinal(c)].display;
}

std::string_view patch_key(Category c) noexcept {
  return kNames[ordinal(c)].patch;
}

std::string_view document_key(Category c) noexcept {
  return kNames[ordinal(c)].document;
}

std::optional<Category> parse_category(std::string_view text) noexcept {
  const std::string key = fold(text);
  if (key.empty()) return std::nullopt;
  for (Category c : kAllCategories) {
    const auto& n = kNames[ordinal(c)];
    if (key == fold(n.id) || key == fold(n.display) || key == fold(n.patch) ||
        key == fold(n.document)) {
      return c;
    }
  }
  // A few spellings seen in drawings and reports.
  if (key == "gd&tframe" || key == "gdts" || key == "fcf") return Category::GDT;
  if (key == "generaltolerances" || key == "tolerance") {
    return Category::GeneralTolerance;
  }
  if (key == "materials") return Category::Material;
  if (key == "radii" || key == "radiuses") return Category::Radius;
  if (key == "thread") return Category::Thread;
  return std::nullopt;
}

Category category_of(const AnnotationRecord& record) noexcept {
  return static_cast<Category>(record.index());
}

}  // namespace drawparse
