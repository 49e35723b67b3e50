// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Annotation categories, their structured record types, the GD&T symbol
// table, and JSON (de)serialization of whole-drawing documents.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "drawparse/error.hpp"

namespace drawparse {

// Ordinal order is alphabetical and doubles as the detector class-id table.
enum class Category : std::uint8_t {
  GDT = 0,
  GeneralTolerance,
  Measure,
  Material,
  Note,
  Radius,
  SurfaceRoughness,
  Thread,
  TitleBlock,
};

inline constexpr std::size_t kCategoryCount = 9;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::GDT,      Category::GeneralTolerance, Category::Measure,
    Category::Material, Category::Note,             Category::Radius,
    Category::SurfaceRoughness, Category::Thread,   Category::TitleBlock,
};

constexpr int ordinal(Category c) noexcept { return static_cast<int>(c); }
std::optional<Category> category_from_ordinal(int id) noexcept;

/// Identifier form, e.g. "GDT", "SurfaceRoughness". Used on the adapter wire.
std::string_view category_name(Category c) noexcept;
/// Human form used in overlays and reports, e.g. "GD&Ts", "Surface Roughness".
std::string_view category_display_name(Category c) noexcept;
/// Accepts identifier, display, and patch-key spellings, case-insensitively.
std::optional<Category> parse_category(std::string_view text) noexcept;

// ---------------------------------------------------------------------------
// GD&T symbols

struct GdtSymbol {
  std::string_view name;
  char32_t codepoint;
};

/// The 14 characteristic symbols, in table order.
std::span<const GdtSymbol> gdt_symbol_table() noexcept;

/// Case-insensitive on name. Throws Error{UnknownSymbol}.
char32_t lookup_gdt_symbol(std::string_view name);
/// Inverse of lookup_gdt_symbol. Throws Error{UnknownSymbol}.
std::string gdt_symbol_name(char32_t codepoint);
bool is_gdt_symbol(char32_t codepoint) noexcept;

/// "U+2316" form, four uppercase hex digits minimum.
std::string format_codepoint_escape(char32_t codepoint);
/// Parses exactly "U+XXXX" (4 hex digits, uppercase).
std::optional<char32_t> parse_codepoint_escape(std::string_view text) noexcept;

std::string utf8_encode(char32_t codepoint);
/// Decodes a string holding exactly one scalar; nullopt otherwise.
std::optional<char32_t> utf8_single_scalar(std::string_view text) noexcept;

inline constexpr char32_t kDiameterSign = 0x2300;  // ⌀
inline constexpr std::string_view kDiameterEscape = "U+2300";
/// Latin capital O with stroke, as printed in document-dialect values.
inline constexpr std::string_view kDiameterGlyphLatin = "\xC3\x98";  // Ø
inline constexpr std::string_view kDiameterGlyph = "\xE2\x8C\x80";   // ⌀

// ---------------------------------------------------------------------------
// Records

struct GdtFrame {
  int index = 1;
  char32_t characteristic = 0;
  std::string tolerance;            // e.g. "U+2300 0.014 (M)"
  std::vector<std::string> datums;  // e.g. {"A", "B(M)"}
  bool operator==(const GdtFrame&) const = default;
};

/// A GD&T patch may hold a stack of frames.
struct GdtFrames {
  std::vector<GdtFrame> frames;
  bool operator==(const GdtFrames&) const = default;
};

struct Measure {
  std::optional<int> quantity;
  std::string nominalValue;  // "U+2300 6.5", "81", "45°"
  std::string tolerance;     // "±0.05"
  std::string upperLimit;    // "+0.1"
  std::string lowerLimit;    // "-0.1"
  std::string feature;       // document-dialect label, e.g. "Shaft Length"
  /// Verbatim callout, kept only when no canonical render reproduces it.
  std::string displayValue;
  bool operator==(const Measure&) const = default;
};

struct ThreadSpec {
  std::optional<int> quantity;
  std::string designation;     // "M20×2"
  std::string fitClass;        // "6H"
  std::string depthQualifier;  // "THRU" or a depth value
  bool operator==(const ThreadSpec&) const = default;
};

enum class RoughnessParameter : std::uint8_t { Ra, NGrade };

struct SurfaceRoughnessSpec {
  RoughnessParameter parameter = RoughnessParameter::Ra;
  std::string value;  // "0.8 µm" or "N6"
  bool operator==(const SurfaceRoughnessSpec&) const = default;
};

struct RadiusSpec {
  std::optional<int> quantity;
  std::string value;  // "R12"
  bool operator==(const RadiusSpec&) const = default;
};

struct MaterialSpec {
  std::string designation;
  bool operator==(const MaterialSpec&) const = default;
};

struct GeneralToleranceSpec {
  std::string text;
  bool operator==(const GeneralToleranceSpec&) const = default;
};

struct NotesBlock {
  std::vector<std::string> lines;
  bool operator==(const NotesBlock&) const = default;
};

struct TitleBlock {
  std::vector<std::pair<std::string, std::string>> entries;
  bool operator==(const TitleBlock&) const = default;
};

/// Alternative order follows Category ordinals.
using AnnotationRecord =
    std::variant<GdtFrames, GeneralToleranceSpec, Measure, MaterialSpec,
                 NotesBlock, RadiusSpec, SurfaceRoughnessSpec, ThreadSpec,
                 TitleBlock>;

Category category_of(const AnnotationRecord& record) noexcept;

struct DrawingDocument {
  std::vector<GdtFrame> gdts;
  std::vector<Measure> measures;
  std::vector<ThreadSpec> threads;
  std::vector<SurfaceRoughnessSpec> surfaceRoughness;
  std::vector<RadiusSpec> radii;
  std::optional<MaterialSpec> material;
  std::optional<GeneralToleranceSpec> generalTolerance;
  std::optional<TitleBlock> titleBlock;
  std::optional<NotesBlock> notes;
  bool operator==(const DrawingDocument&) const = default;
};

/// Appends a record into the matching document slot. GD&T frames are
/// re-indexed to stay contiguous; singleton slots merge (notes lines,
/// title-block entries) or replace (material, general tolerance).
void add_record(DrawingDocument& doc, const AnnotationRecord& record);

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string path;
  std::string message;
  bool operator==(const Violation&) const = default;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Throws Error{CategoryMismatch} when the record type differs from category.
ValidationResult validate_record(Category category,
                                 const AnnotationRecord& record);
ValidationResult validate_document(const DrawingDocument& doc);

// ---------------------------------------------------------------------------
// Serialization

enum class SchemaDialect : std::uint8_t {
  Patch,     // camelCase record keys, "GD&Ts", codepoint escapes
  Document,  // "GD&T" / "Type" / "Tolerance" / "Datums", symbol names
};

std::optional<SchemaDialect> parse_dialect(std::string_view text) noexcept;

/// Deterministic JSON; all nine category keys, fixed order.
std::string serialize_document(const DrawingDocument& doc,
                               SchemaDialect dialect);
/// Auto-detects the dialect. Throws Error{MalformedJson} or
/// Error{SchemaViolation} with a field path.
DrawingDocument parse_document(std::string_view text);
/// Dialect detection without full parsing; nullopt when neither matches.
std::optional<SchemaDialect> detect_dialect(std::string_view text);

/// Single-category patch label, e.g. {"GD&Ts":[{...}]}.
std::string serialize_patch_label(const AnnotationRecord& record);
AnnotationRecord parse_patch_label(std::string_view text);

/// Patch-dialect JSON key for a category, e.g. "GD&Ts", "Surface Roughness".
std::string_view patch_key(Category c) noexcept;
/// Document-dialect JSON key, e.g. "GD&T", "Surface Roughness".
std::string_view document_key(Category c) noexcept;

}  // namespace drawparse
