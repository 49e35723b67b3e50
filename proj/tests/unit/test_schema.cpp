// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <json.hpp>

#include "drawparse/notation.hpp"
#include "drawparse/schema.hpp"
#include "files.hpp"
#include "gen.hpp"

using namespace drawparse;           // NOLINT
using namespace drawparse::testing;  // NOLINT

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("category ordinals and names") {
  CHECK(ordinal(Category::GDT) == 0);
  CHECK(ordinal(Category::TitleBlock) == 8);
  for (Category c : kAllCategories) {
    CHECK(category_from_ordinal(ordinal(c)) == c);
    CHECK(parse_category(category_name(c)) == c);
    CHECK(parse_category(category_display_name(c)) == c);
    CHECK(parse_category(patch_key(c)) == c);
    CHECK(parse_category(document_key(c)) == c);
  }
  CHECK_FALSE(category_from_ordinal(9).has_value());
  CHECK_FALSE(category_from_ordinal(-1).has_value());
  CHECK(category_display_name(Category::GDT) == "GD&Ts");
  CHECK(category_display_name(Category::SurfaceRoughness) == "Surface Roughness");
  CHECK(parse_category("surfaceroughness") == Category::SurfaceRoughness);
  CHECK_FALSE(parse_category("Hexagon").has_value());
}

TEST_CASE("symbol table lookups") {
  CHECK(gdt_symbol_table().size() == 14);
  CHECK(lookup_gdt_symbol("Position") == 0x2316);
  CHECK(lookup_gdt_symbol("Total runout") == 0x2330);
  CHECK(lookup_gdt_symbol("position") == 0x2316);
  CHECK(gdt_symbol_name(0x27C2) == "Perpendicularity");
  CHECK(code_of([] { lookup_gdt_symbol("Hexagon"); }) == ErrorCode::UnknownSymbol);
  CHECK(code_of([] { gdt_symbol_name(0x41); }) == ErrorCode::UnknownSymbol);
  CHECK_FALSE(is_gdt_symbol(0x41));

  std::set<char32_t> points;
  std::set<std::string_view> names;
  for (const auto& s : gdt_symbol_table()) {
    CHECK(lookup_gdt_symbol(s.name) == s.codepoint);
    CHECK(gdt_symbol_name(s.codepoint) == s.name);
    points.insert(s.codepoint);
    names.insert(s.name);
  }
  CHECK(points.size() == 14);
  CHECK(names.size() == 14);
}

TEST_CASE("codepoint escapes and utf-8") {
  CHECK(format_codepoint_escape(0x2316) == "U+2316");
  CHECK(format_codepoint_escape(0x41) == "U+0041");
  CHECK(parse_codepoint_escape("U+23E5") == char32_t{0x23E5});
  CHECK_FALSE(parse_codepoint_escape("U+23e5").has_value());
  CHECK_FALSE(parse_codepoint_escape("U+23E").has_value());
  CHECK_FALSE(parse_codepoint_escape("2316").has_value());
  for (const auto& s : gdt_symbol_table()) {
    CHECK(parse_codepoint_escape(format_codepoint_escape(s.codepoint)) == s.codepoint);
    CHECK(utf8_single_scalar(utf8_encode(s.codepoint)) == s.codepoint);
  }
  CHECK(utf8_encode(0x2300) == std::string(kDiameterGlyph));
  CHECK_FALSE(utf8_single_scalar("ab").has_value());
  CHECK_FALSE(utf8_single_scalar("\xE2\x8C").has_value());
}

TEST_CASE("notation primitives") {
  using namespace notation;
  CHECK(is_decimal("0.020"));
  CHECK(is_decimal("12"));
  CHECK_FALSE(is_decimal(".5"));
  CHECK_FALSE(is_decimal("5."));
  CHECK(is_signed_decimal("-0.1"));
  CHECK(decimal_value("+0.25") == doctest::Approx(0.25));
  CHECK_FALSE(is_positive_decimal("0.000"));
  CHECK(normalize_space("  a \n  b\t") == "a b");
  CHECK(canonical_tolerance("Ø0.014(M)") == "U+2300 0.014 (M)");
  CHECK(canonical_tolerance("\xE2\x8C\x80 0.014 \xE2\x93\x82") == "U+2300 0.014 (M)");
  CHECK(code_of([] { canonical_tolerance("  "); }) == ErrorCode::EmptyTolerance);
  CHECK(tolerance_to_document("U+2300 0.014 (M)") == "Ø0.014 (M)");
  CHECK(is_datum_label("A"));
  CHECK(is_datum_label("B(M)"));
  CHECK(is_datum_label("B (M)"));
  CHECK(is_datum_label("A-B"));
  CHECK_FALSE(is_datum_label("a"));
  CHECK_FALSE(is_datum_label("AB"));
  CHECK(datum_base("B(M)") == "B");
  CHECK(is_thread_designation("M20×2"));
  CHECK_FALSE(is_thread_designation("X20"));
  CHECK(is_fit_class("6H"));
  CHECK(is_fit_class("4h6h"));
  CHECK_FALSE(is_fit_class("H6"));
}

TEST_CASE("validation") {
  GdtFrames fig{{{1, 0x2316, "U+2300 0.014 (M)", {"A", "B", "C"}}}};
  CHECK(validate_record(Category::GDT, fig).ok());

  Measure inverted;
  inverted.nominalValue = "81";
  inverted.upperLimit = "-0.1";
  inverted.lowerLimit = "+0.1";
  auto r = validate_record(Category::Measure, inverted);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].message.find("upper < lower") != std::string::npos);

  GdtFrames letter{{{1, 0x41, "0.1", {}}}};
  r = validate_record(Category::GDT, letter);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].path == "gdts.1.geometricCharacteristic");

  CHECK(code_of([&] { validate_record(Category::Measure, fig); }) == ErrorCode::CategoryMismatch);

  Measure both;
  both.nominalValue = "10";
  both.tolerance = "±0.1";
  both.upperLimit = "+0.1";
  CHECK_FALSE(validate_record(Category::Measure, both).ok());

  GdtFrames gap{{{1, 0x2316, "0.1", {}}, {3, 0x23E5, "0.1", {}}}};
  CHECK_FALSE(validate_record(Category::GDT, gap).ok());

  CHECK_FALSE(validate_record(Category::Note, NotesBlock{}).ok());
  CHECK_FALSE(validate_record(Category::Radius, RadiusSpec{std::nullopt, "12"}).ok());
  CHECK_FALSE(validate_record(Category::SurfaceRoughness,
                              SurfaceRoughnessSpec{RoughnessParameter::NGrade, "N13"})
                  .ok());
  CHECK(validate_document(DrawingDocument{}).ok());
}

TEST_CASE("generated records validate") {
  Gen g(7);
  for (Category c : kAllCategories) {
    for (int i = 0; i < 200; ++i) {
      const auto rec = gen_record(c, g);
      CHECK(category_of(rec) == c);
      auto r = validate_record(c, rec);
      if (!r.ok()) FAIL_CHECK(category_name(c) << ": " << r.violations[0].path << " "
                                               << r.violations[0].message);
    }
  }
}

TEST_CASE("golden documents round-trip byte-identically") {
  for (const char* name : {"shaft_document.json", "bracket_document.json", "flange_document.json",
                           "spanner_document.json"}) {
    CAPTURE(name);
    const std::string text = slurp(fixture(std::string("golden/") + name));
    REQUIRE_FALSE(text.empty());
    CHECK(detect_dialect(text) == SchemaDialect::Document);
    const DrawingDocument doc = parse_document(text);
    CHECK(validate_document(doc).ok());
    CHECK(serialize_document(doc, SchemaDialect::Document) == text);
    // Patch dialect carries the same content.
    const std::string patch = serialize_document(doc, SchemaDialect::Patch);
    CHECK(detect_dialect(patch) == SchemaDialect::Patch);
    CHECK(parse_document(patch) == doc);
  }
}

TEST_CASE("shaft document contents") {
  const DrawingDocument doc = parse_document(slurp(fixture("golden/shaft_document.json")));
  REQUIRE(doc.material.has_value());
  CHECK(doc.material->designation == "C-45");
  CHECK(doc.gdts.size() == 4);
  CHECK(doc.gdts[0].characteristic == 0x2316);
  CHECK(doc.gdts[0].tolerance == "U+2300 0.020");
  CHECK(doc.gdts[0].datums == std::vector<std::string>{"A", "B(M)", "C(M)"});
  REQUIRE(doc.threads.size() == 1);
  CHECK(doc.threads[0].quantity == 6);
  CHECK(doc.threads[0].designation == "M5");
  CHECK(doc.threads[0].depthQualifier == "THRU");
  REQUIRE(doc.measures.size() == 3);
  CHECK(doc.measures[1].nominalValue == "U+2300 28");
  CHECK(doc.measures[1].tolerance == "±0.05");
  CHECK(doc.measures[1].feature == "Diameter");
  REQUIRE(doc.notes.has_value());
  CHECK(doc.notes->lines.size() == 4);
  const std::string out = serialize_document(doc, SchemaDialect::Document);
  CHECK(out.find("\"Material\": \"C-45\"") != std::string::npos);
}

TEST_CASE("the two patch-label fixtures round-trip") {
  for (const char* name : {"gdt_patch_label.json", "measure_patch_label.json"}) {
    CAPTURE(name);
    const std::string text = slurp(fixture(std::string("golden/") + name));
    const AnnotationRecord rec = parse_patch_label(text);
    CHECK(serialize_patch_label(rec) == text);
  }
  const auto gdt = std::get<GdtFrames>(parse_patch_label(slurp(fixture("golden/gdt_patch_label.json"))));
  CHECK(gdt.frames[0].tolerance == "U+2300 0.014 (M)");
  const auto m = std::get<Measure>(parse_patch_label(slurp(fixture("golden/measure_patch_label.json"))));
  CHECK(m.quantity == 8);
  CHECK(m.nominalValue == "U+2300 6.5");
  CHECK(m.upperLimit == "+0.1");
  CHECK(m.lowerLimit == "-0.1");
}

TEST_CASE("empty document and parse errors") {
  const std::string empty = serialize_document(DrawingDocument{}, SchemaDialect::Document);
  const auto j = nlohmann::json::parse(empty);
  CHECK(j.size() == 9);
  CHECK(parse_document(empty) == DrawingDocument{});
  CHECK(code_of([] { parse_document("{}"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([&] { parse_document(empty.substr(0, empty.size() / 2)); }) ==
        ErrorCode::MalformedJson);
  CHECK(code_of([] { parse_patch_label("{\"Hexagons\": []}"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] {
          parse_patch_label(R"({"GD&Ts":[{"index":1,"geometricCharacteristic":"U+0041","tolerance":"0.1","datumReference":[]}]})");
        }) == ErrorCode::SchemaViolation);
}

TEST_CASE("generated documents survive both dialects") {
  Gen g(11);
  for (int i = 0; i < 300; ++i) {
    const DrawingDocument doc = gen_document(g);
    REQUIRE(validate_document(doc).ok());
    for (auto dialect : {SchemaDialect::Patch, SchemaDialect::Document}) {
      const std::string text = serialize_document(doc, dialect);
      const DrawingDocument back = parse_document(text);
      CHECK(back == doc);
      CHECK(serialize_document(back, dialect) == text);
    }
  }
}

TEST_CASE("patch labels of generated records round-trip") {
  Gen g(13);
  for (Category c : kAllCategories) {
    for (int i = 0; i < 200; ++i) {
      const auto rec = gen_record(c, g);
      CHECK(parse_patch_label(serialize_patch_label(rec)) == rec);
    }
  }
}
