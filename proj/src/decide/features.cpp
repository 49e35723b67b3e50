// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "drawparse/decide.hpp"
#include "drawparse/notation.hpp"

namespace drawparse {
namespace {

using namespace notation;  // NOLINT

struct Alias {
  std::string_view key;  // upper case, spaces and hyphens removed
  std::string_view materialClass;
};

constexpr std::array<Alias, 16> kMaterialAliases = {{
    {"C45", "medium-carbon steel"},
    {"C45E", "medium-carbon steel"},
    {"CK45", "medium-carbon steel"},
    {"1045", "medium-carbon steel"},
    {"AISI1045", "medium-carbon steel"},
    {"EN8", "medium-carbon steel"},
    {"S235", "low-carbon steel"},
    {"S235JR", "low-carbon steel"},
    {"C15", "low-carbon steel"},
    {"1018", "low-carbon steel"},
    {"42CRMO4", "alloy steel"},
    {"4140", "alloy steel"},
    {"AISI304", "stainless steel"},
    {"X5CRNI1810", "stainless steel"},
    {"6061", "aluminium alloy"},
    {"ALMGSI1", "aluminium alloy"},
}};

std::string alias_key(std::string_view designation) {
  std::string s;
  for (unsigned char c : designation) {
    if (c == ' ' || c == '-' || c == '_') continue;
    s += static_cast<char>(std::toupper(c));
  }
  for (std::string_view suffix : {"STEEL", "ST"}) {
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
      s.erase(s.size() - suffix.size());
      break;
    }
  }
  return s;
}

std::optional<double> tolerance_band(const Measure& m) {
  if (!m.tolerance.empty()) {
    // "±0.05"
    const auto v = decimal_value(std::string_view(m.tolerance).substr(std::string_view("±").size()));
    if (v) return 2 * *v;
    return std::nullopt;
  }
  if (m.upperLimit.empty() && m.lowerLimit.empty()) return std::nullopt;
  const double up = m.upperLimit.empty() ? 0.0 : decimal_value(m.upperLimit).value_or(0.0);
  const double lo = m.lowerLimit.empty() ? 0.0 : decimal_value(m.lowerLimit).value_or(0.0);
  const double band = up - lo;
  if (!(band > 0)) return std::nullopt;
  return band;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

FeatureType diameter_feature_type(const Measure& m, std::size_t index,
                                  const ExtractOptions& options) {
  if (auto it = options.measureHints.find(index); it != options.measureHints.end()) {
    return it->second;
  }
  const std::string label = lower(m.feature);
  for (std::string_view word : {"hole", "bore"}) {
    if (label.find(word) != std::string::npos) return FeatureType::Hole;
  }
  if (label.find("shaft") != std::string::npos) return FeatureType::CylindricalShaft;
  return options.bareDiameter;
}

void assign_grade(FeatureContext& ctx) {
  if (!ctx.nominalDiameter || !ctx.toleranceBand) return;
  try {
    ctx.itGrade = classify_tolerance_grade(*ctx.nominalDiameter, *ctx.toleranceBand);
  } catch (const Error&) {
    // Outside the tabulated range: the grade stays unknown.
  }
}

}  // namespace

std::string_view feature_type_name(FeatureType t) noexcept {
  switch (t) {
    case FeatureType::ThreadedHole: return "ThreadedHole";
    case FeatureType::CylindricalShaft: return "CylindricalShaft";
    case FeatureType::Hole: return "Hole";
    case FeatureType::Shaft: return "Shaft";
    case FeatureType::PositionalFeature: return "PositionalFeature";
  }
  return "";
}

std::optional<FeatureType> parse_feature_type(std::string_view name) noexcept {
  for (FeatureType t : {FeatureType::ThreadedHole, FeatureType::CylindricalShaft,
                        FeatureType::Hole, FeatureType::Shaft, FeatureType::PositionalFeature}) {
    if (feature_type_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string material_class(std::string_view designation) {
  const std::string key = alias_key(designation);
  for (const auto& a : kMaterialAliases) {
    if (a.key == key) return std::string(a.materialClass);
  }
  return lower(normalize_space(designation));
}

std::vector<FeatureContext> extract_features(const DrawingDocument& doc,
                                             const ExtractOptions& options) {
  std::string material;
  if (options.material && !trim(*options.material).empty()) {
    material = normalize_space(*options.material);
  } else if (doc.material) {
    material = normalize_space(doc.material->designation);
  }

  std::optional<double> finestRa;
  for (const auto& s : doc.surfaceRoughness) {
    if (auto ra = roughness_ra_um(s); ra && (!finestRa || *ra < *finestRa)) finestRa = ra;
  }

  std::vector<FeatureContext> out;
  for (std::size_t i = 0; i < doc.threads.size(); ++i) {
    const ThreadSpec& t = doc.threads[i];
    FeatureContext ctx;
    ctx.featureType = FeatureType::ThreadedHole;
    ctx.source = "threads." + std::to_string(i + 1);
    ctx.nominalDiameter = thread_major_diameter(t.designation);
    ctx.quantity = t.quantity;
    ctx.threadDesignation = t.designation;
    ctx.depthQualifier = t.depthQualifier;
    out.push_back(std::move(ctx));
  }
  for (std::size_t i = 0; i < doc.measures.size(); ++i) {
    const Measure& m = doc.measures[i];
    if (!nominal_is_diameter(m.nominalValue)) continue;
    FeatureContext ctx;
    ctx.featureType = diameter_feature_type(m, i, options);
    ctx.source = "measures." + std::to_string(i + 1);
    ctx.nominalDiameter = nominal_number(m.nominalValue);
    ctx.toleranceBand = tolerance_band(m);
    ctx.quantity = m.quantity;
    ctx.roughnessRa = finestRa;
    assign_grade(ctx);
    out.push_back(std::move(ctx));
  }
  for (const auto& f : doc.gdts) {
    if (f.characteristic != lookup_gdt_symbol("Position")) continue;
    FeatureContext ctx;
    ctx.featureType = FeatureType::PositionalFeature;
    ctx.source = "gdts." + std::to_string(f.index);
    ctx.positionalTolerance = tolerance_value(f.tolerance);
    ctx.datums = f.datums;
    out.push_back(std::move(ctx));
  }
  if (!out.empty() && material.empty()) {
    throw Error(ErrorCode::MissingMaterial,
                "drawing has no material and none was supplied");
  }
  for (auto& ctx : out) ctx.material = material;
  return out;
}

}  // namespace drawparse
