// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drawparse/notation.hpp"
#include "drawparse/parser.hpp"
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

const std::string kPm = "\xC2\xB1";

}  // namespace

TEST_CASE("gdt frames") {
  auto f = parse_gdt("U+2316 | U+2300 0.014 (M) | A | B | C");
  REQUIRE(f.size() == 1);
  CHECK(f[0].index == 1);
  CHECK(f[0].characteristic == 0x2316);
  CHECK(f[0].tolerance == "U+2300 0.014 (M)");
  CHECK(f[0].datums == std::vector<std::string>{"A", "B", "C"});

  f = parse_gdt("U+23E5 | 0.020");
  REQUIRE(f.size() == 1);
  CHECK(gdt_symbol_name(f[0].characteristic) == "Flatness");
  CHECK(f[0].tolerance == "0.020");
  CHECK(f[0].datums.empty());

  CHECK(code_of([] { parse_gdt("U+2316 | | A"); }) == ErrorCode::EmptyTolerance);
  CHECK(code_of([] { parse_gdt("U+0041 | 0.1"); }) == ErrorCode::UnknownSymbol);
  CHECK(code_of([] { parse_gdt("U+2316 | 0.1 | a1"); }) == ErrorCode::MalformedDatum);

  // Raw glyphs, circled modifiers, stacked frames, wide-space compartments.
  f = parse_gdt("\xE2\x8C\x96 | \xC3\x98" "0.020 | A | B\xE2\x93\x82\n\n\xE2\x8F\xA4  0.020  A");
  REQUIRE(f.size() == 2);
  CHECK(f[0].tolerance == "U+2300 0.020");
  CHECK(f[0].datums[1] == "B(M)");
  CHECK(f[1].index == 2);
  CHECK(f[1].characteristic == 0x23E4);
  CHECK(f[1].datums == std::vector<std::string>{"A"});
}

TEST_CASE("measures") {
  Measure m = parse_measure("8X U+2300 6.5 +0.1 -0.1");
  CHECK(m.quantity == 8);
  CHECK(m.nominalValue == "U+2300 6.5");
  CHECK(m.upperLimit == "+0.1");
  CHECK(m.lowerLimit == "-0.1");
  CHECK(m.tolerance.empty());

  m = parse_measure("81 " + kPm + "0.05");
  CHECK(m.nominalValue == "81");
  CHECK(m.tolerance == kPm + "0.05");
  CHECK_FALSE(m.quantity.has_value());

  m = parse_measure("U+2300 28");
  CHECK(m == Measure{std::nullopt, "U+2300 28", "", "", "", "", ""});

  CHECK(code_of([] { parse_measure("TYP"); }) == ErrorCode::NoNominalValue);
  CHECK(code_of([&] { parse_measure("10 " + kPm + "0.1 +0.2 -0.1"); }) ==
        ErrorCode::ConflictingTolerances);

  // A non-canonical callout keeps its printed form.
  m = parse_measure("2\xC3\x97" "4 mm");
  CHECK_FALSE(m.displayValue.empty());
  CHECK(render_annotation(m) == m.displayValue);
}

TEST_CASE("threads") {
  ThreadSpec t = parse_thread("6X M20 X2-6H");
  CHECK(t.quantity == 6);
  CHECK(t.designation == "M20\xC3\x97" "2");
  CHECK(t.fitClass == "6H");

  t = parse_thread("6\xC3\x97M5 TAP THRU");
  CHECK(t.quantity == 6);
  CHECK(t.designation == "M5");
  CHECK(t.depthQualifier == "THRU");

  t = parse_thread("M6");
  CHECK(t == ThreadSpec{std::nullopt, "M6", "", ""});

  CHECK(code_of([] { parse_thread("HOLE 6"); }) == ErrorCode::NotAThread);
}

TEST_CASE("roughness and radii") {
  auto s = parse_surface_roughness("Ra 0.8 \xC2\xB5m");
  CHECK(s.parameter == RoughnessParameter::Ra);
  CHECK(s.value == "0.8 \xC2\xB5m");
  s = parse_surface_roughness("N6");
  CHECK(s.parameter == RoughnessParameter::NGrade);
  CHECK(s.value == "N6");
  CHECK(code_of([] { parse_surface_roughness("Rz?"); }) == ErrorCode::UnknownRoughnessForm);
  CHECK(notation::roughness_ra_um(s) == doctest::Approx(0.8));

  auto r = std::get<RadiusSpec>(parse_annotation(Category::Radius, "R12"));
  CHECK(r.value == "R12");
  CHECK_FALSE(r.quantity.has_value());
  r = parse_radius("4X R2.5");
  CHECK(r.quantity == 4);
  CHECK(r.value == "R2.5");
}

TEST_CASE("text categories") {
  auto mat = std::get<MaterialSpec>(parse_annotation(Category::Material, "C-45"));
  CHECK(mat.designation == "C-45");
  auto notes = std::get<NotesBlock>(parse_annotation(
      Category::Note, "All dimensions are in mm.\nGrinding must be done after plating."));
  CHECK(notes.lines.size() == 2);
  auto tb = std::get<TitleBlock>(
      parse_annotation(Category::TitleBlock, "Designer: Shubham\nDate: 09.06.2020"));
  REQUIRE(tb.entries.size() == 2);
  CHECK(tb.entries[1] == std::pair<std::string, std::string>{"Date", "09.06.2020"});
  CHECK(code_of([] { parse_annotation(Category::Material, "   "); }) == ErrorCode::MalformedText);
}

TEST_CASE("feature header on measures") {
  auto m = std::get<Measure>(
      parse_annotation(Category::Measure, "@feature: Shaft Length\n81 " + kPm + "0.05 mm"));
  CHECK(m.feature == "Shaft Length");
  CHECK(m.nominalValue == "81");
}

TEST_CASE("canonical render") {
  GdtFrames fig{{{1, 0x2316, "U+2300 0.014 (M)", {"A", "B", "C"}}}};
  CHECK(render_annotation(fig) == "U+2316 | U+2300 0.014 (M) | A | B | C");
  Measure nominal;
  nominal.nominalValue = "81";
  CHECK(render_annotation(nominal) == "81");
  CHECK(render_annotation(ThreadSpec{6, "M5", "", "THRU"}) == "6\xC3\x97M5 TAP THRU");
}

TEST_CASE("parse of render is the identity on generated records") {
  Gen g(2026);
  for (Category c : kAllCategories) {
    std::size_t failures = 0;
    for (int i = 0; i < 1000; ++i) {
      const AnnotationRecord rec = gen_record(c, g);
      const std::string text = render_annotation(rec);
      try {
        if (!(parse_annotation(c, text) == rec)) {
          ++failures;
          MESSAGE(category_name(c) << " mismatch: " << text);
        }
      } catch (const Error& e) {
        ++failures;
        MESSAGE(category_name(c) << " '" << text << "': " << e.what());
      }
    }
    CHECK_MESSAGE(failures == 0, category_name(c));
  }
}

TEST_CASE("parse_annotation never returns an invalid record") {
  Gen g(99);
  // Mangled transcriptions either throw or produce valid records.
  for (Category c : kAllCategories) {
    for (int i = 0; i < 300; ++i) {
      std::string text = render_annotation(gen_record(c, g));
      const int edits = g.between(1, 3);
      for (int e = 0; e < edits && !text.empty(); ++e) {
        const auto pos = static_cast<std::size_t>(g.between(0, static_cast<int>(text.size()) - 1));
        switch (g.between(0, 2)) {
          case 0: text.erase(pos, 1); break;
          case 1: text.insert(pos, 1, g.pick(std::vector<char>{' ', '|', '-', 'X', '0', '\n'})); break;
          default: text[pos] = static_cast<char>(g.between(0x20, 0x7e)); break;
        }
      }
      try {
        const auto rec = parse_annotation(c, text);
        CHECK(category_of(rec) == c);
        CHECK(validate_record(c, rec).ok());
      } catch (const Error&) {
      }
    }
  }
}
