// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Machining decisions from a structured drawing document: ISO 286-1 grade
// classification, feature extraction, a declarative rule engine, and the
// tool / cutting-parameter database.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drawparse/schema.hpp"

namespace drawparse {

// ---------------------------------------------------------------------------
// Tolerance grades

inline constexpr int kMinItGrade = 1;
inline constexpr int kMaxItGrade = 18;
inline constexpr double kMaxTableNominal = 500.0;

/// Standard tolerance in micrometres for a grade and nominal size (mm).
/// IT5 and coarser are multiplier * i with i = 0.45 D^(1/3) + 0.001 D, D the
/// geometric mean of the size range, rounded to 1 um. Throws
/// Error{OutOfTableRange} for nominal outside (0, 500] or grade outside 1..18.
double it_tolerance_um(int grade, double nominal);

/// Smallest grade whose tolerance covers the band (mm). Throws
/// Error{InvalidArgument} for band <= 0, Error{OutOfTableRange} for nominal
/// outside (0, 500] or a band wider than IT18.
int classify_tolerance_grade(double nominal, double band);

// ---------------------------------------------------------------------------
// Features

enum class FeatureType { ThreadedHole, CylindricalShaft, Hole, Shaft, PositionalFeature };

std::string_view feature_type_name(FeatureType t) noexcept;
std::optional<FeatureType> parse_feature_type(std::string_view name) noexcept;

struct FeatureContext {
  FeatureType featureType = FeatureType::Hole;
  /// Document path of the source annotation, e.g. "threads.1".
  std::string source;
  std::optional<double> nominalDiameter;  // mm
  std::optional<double> toleranceBand;    // mm, total width
  std::optional<int> itGrade;
  std::optional<double> roughnessRa;  // um
  std::string material;
  std::optional<int> quantity;
  std::optional<double> positionalTolerance;  // mm
  std::vector<std::string> datums;
  std::string threadDesignation;  // "M5", "M20×2"
  std::string depthQualifier;     // "THRU" or a depth
};

/// Lower-case material class for a designation, e.g. "C-45 Steel" ->
/// "medium-carbon steel". Unknown designations map to their lower-cased,
/// space-normalized text.
std::string material_class(std::string_view designation);

struct ExtractOptions {
  /// Takes precedence over the document's material.
  std::optional<std::string> material;
  /// Shaft/hole hint per measure index (0-based, document order).
  std::map<std::size_t, FeatureType> measureHints;
  /// Type for diameter measures whose label names neither a hole nor a shaft.
  FeatureType bareDiameter = FeatureType::CylindricalShaft;
};

/// Threads become ThreadedHole contexts, diameter measures CylindricalShaft /
/// Hole / Shaft contexts with band, grade and the finest roughness on the
/// drawing, Position frames PositionalFeature contexts. Throws
/// Error{MissingMaterial} when features exist but no material is known.
std::vector<FeatureContext> extract_features(const DrawingDocument& doc,
                                             const ExtractOptions& options = {});

// ---------------------------------------------------------------------------
// Rules

struct Condition {
  std::string field;  // empty for "any"
  /// eq, lt, gt, le, ge, in-range, it-grade-in, material-class, in, present,
  /// contains-all, any.
  std::string op;
  std::optional<double> number;
  std::optional<double> min;
  std::optional<double> max;
  std::string text;
  std::vector<std::string> list;
  std::vector<Condition> any;
};

struct ToolQuery {
  /// Label reported in recommendations, e.g. "Twist Drill (Ø4.2 mm, HSS)".
  std::string name;
  std::string toolType;
  std::string sizeSpec;  // may be empty: any size
  /// Workpiece material; empty means the feature's material.
  std::string materialClass;
};

struct Rule {
  std::string id;
  std::string description;
  std::vector<Condition> conditions;
  std::vector<std::string> operations;
  std::vector<ToolQuery> toolQueries;
};

struct RuleSet {
  std::vector<Rule> rules;
};

/// JSON list of {id, description?, conditions, operations, toolQueries}.
/// Throws Error{MalformedJson}, Error{SchemaViolation} with a path.
RuleSet parse_rules(std::string_view json);
RuleSet load_rules(const std::filesystem::path& path);

struct TraceEntry {
  std::string ruleId;
  std::string condition;  // human-readable form
  bool result = false;
  std::string actual;  // field value seen, or "absent"
};

bool evaluate_condition(const Condition& c, const FeatureContext& ctx);
std::string describe_condition(const Condition& c);

/// Rules whose every condition holds, in file order.
std::vector<const Rule*> match_rules(const FeatureContext& ctx, const RuleSet& rules,
                                     std::vector<TraceEntry>* trace = nullptr);

// ---------------------------------------------------------------------------
// Tool database

struct ToolRecord {
  std::string toolId;
  std::string toolType;
  std::string sizeSpec;
  std::string material;
  std::optional<std::string> coating;
  std::string isoCode;
  bool operator==(const ToolRecord&) const = default;
};

struct CuttingData {
  std::string toolId;
  std::string workpieceMaterial;
  double speed = 0;  // m/min
  double feed = 0;   // mm/rev
  std::string speedText;
  std::string feedText;
  bool operator==(const CuttingData&) const = default;
};

struct ToolDatabase {
  std::vector<ToolRecord> inventory;
  std::vector<CuttingData> cutting;
};

/// Inventory header ToolID,ToolType,Diameter,Material,Coating,ISOCode;
/// cutting header ToolID,Material,Speed,Feed. "—", "-" or empty coating
/// means none. Throws Error{DuplicateToolId}, Error{InvalidArgument} for a
/// bad header, non-positive speed or feed, a duplicate (tool, material)
/// pair, or a cutting row for an unknown tool.
ToolDatabase parse_tool_db(std::string_view inventoryCsv, std::string_view cuttingCsv);
ToolDatabase load_tool_db(const std::filesystem::path& inventoryFile,
                          const std::filesystem::path& cuttingFile);

/// Size specs compare after dropping diameter signs, spaces and a trailing
/// "mm", and reading 'x' as '×'.
std::string normalize_size_spec(std::string_view spec);

/// Exact on (toolType, sizeSpec), case-insensitive on type; when a material
/// is given, only tools with cutting data for that material class qualify.
/// Throws Error{ToolNotFound}.
const ToolRecord& query_tool(const ToolDatabase& db, std::string_view toolType,
                             std::string_view sizeSpec, std::string_view material = {});
/// Exact on (toolId, material), falling back to the same material class.
/// Throws Error{NoCuttingData}.
const CuttingData& query_cutting(const ToolDatabase& db, std::string_view toolId,
                                 std::string_view material);

// ---------------------------------------------------------------------------
// Recommendations

struct ToolSelection {
  std::string name;
  std::string ruleId;
  std::optional<ToolRecord> tool;
  std::optional<CuttingData> parameters;
  /// Why the query or its cutting data did not resolve; empty when both did.
  std::string gap;
};

struct Recommendation {
  FeatureContext feature;
  std::vector<std::string> matchedRuleIds;
  std::vector<std::string> operations;
  std::vector<ToolSelection> tools;
  std::vector<CuttingData> parameters;
  std::vector<TraceEntry> trace;
};

Recommendation recommend(const FeatureContext& ctx, const RuleSet& rules,
                         const ToolDatabase& db);

std::string recommendations_json(const std::vector<Recommendation>& recs);

}  // namespace drawparse
