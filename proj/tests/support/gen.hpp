// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded generators for property tests. Every record they produce passes
// validate_record; callers rely on that.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "drawparse/dataset.hpp"
#include "drawparse/geometry.hpp"
#include "drawparse/schema.hpp"

namespace drawparse::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(between(0, static_cast<int>(items.size()) - 1))];
  }
  std::mt19937_64& engine() { return rng_; }

  /// "12", "0.05", "0.020", "6.5"
  std::string decimal(int maxInt = 500, int maxFrac = 3) {
    std::string s = std::to_string(between(0, maxInt));
    const int frac = between(0, maxFrac);
    if (frac > 0) {
      s += '.';
      for (int i = 0; i < frac; ++i) s += static_cast<char>('0' + between(0, 9));
    }
    return s;
  }
  std::string positive_decimal(int maxInt = 500, int maxFrac = 3) {
    for (;;) {
      std::string s = decimal(maxInt, maxFrac);
      if (s.find_first_of("123456789") != std::string::npos) return s;
    }
  }
  std::optional<int> quantity() {
    if (!coin(0.3)) return std::nullopt;
    return between(1, 24);
  }

  /// Printable ASCII words plus a few non-ASCII tokens, single-spaced.
  std::string words(int minWords, int maxWords, bool allowColon = true) {
    static const std::vector<std::string> pool = {
        "REMOVE",    "ALL",   "BURRS",   "BREAK", "SHARP",  "EDGES", "0.2",     "MAX",
        "ISO",       "2768-m", "UNLESS", "OTHERWISE", "SPECIFIED", "DIMENSIONS", "IN",
        "mm",        "HEAT",  "TREAT",   "HRC",   "58-62",  "C-45",  "Steel",   "AlMg3",
        "X5CrNi18-10", "Ø12", "±0.1",    "(2x)",  "A/B",    "µm",    "Ra",      "#3",
        "Rev.",      "B",     "2026-10-14", "1:2", "Sheet", "weld", "THROUGH",  "45°"};
    const int n = between(minWords, maxWords);
    std::string out;
    for (int i = 0; i < n; ++i) {
      std::string w = pick(pool);
      if (!allowColon && w.find(':') != std::string::npos) w = "x";
      out += (i ? " " : "") + w;
    }
    return out;
  }

  RasterPatch raster(int maxSide = 24) {
    const int w = between(1, maxSide);
    const int h = between(1, maxSide);
    const int ch = coin() ? 1 : 3;
    RasterPatch r = make_raster(w, h, ch);
    for (auto& p : r.pixels) p = static_cast<std::uint8_t>(between(0, 255));
    return r;
  }

  OrientedBox box(double extent = 100) {
    return make_box(real(-extent, extent), real(-extent, extent), real(1, extent),
                    real(1, extent), real(-3.2, 3.2));
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string gen_tolerance(Gen& g) {
  std::string s;
  if (g.coin(0.4)) s = "U+2300 ";
  s += g.positive_decimal(2, 3);
  if (g.coin(0.3)) s += g.pick(std::vector<std::string>{" (M)", " (L)", " (S)"});
  return s;
}

inline std::string gen_datum(Gen& g) {
  std::string s(1, static_cast<char>('A' + g.between(0, 25)));
  if (g.coin(0.1)) s += std::string("-") + static_cast<char>('A' + g.between(0, 25));
  if (g.coin(0.25)) {
    s += g.coin() ? "" : " ";
    s += g.pick(std::vector<std::string>{"(M)", "(L)", "(S)"});
  }
  return s;
}

inline GdtFrames gen_gdt(Gen& g) {
  GdtFrames r;
  const auto table = gdt_symbol_table();
  const int n = g.between(1, 4);
  for (int i = 1; i <= n; ++i) {
    GdtFrame f;
    f.index = i;
    f.characteristic = table[static_cast<std::size_t>(g.between(0, static_cast<int>(table.size()) - 1))]
                           .codepoint;
    f.tolerance = gen_tolerance(g);
    const int datums = g.between(0, 3);
    for (int d = 0; d < datums; ++d) f.datums.push_back(gen_datum(g));
    r.frames.push_back(std::move(f));
  }
  return r;
}

inline Measure gen_measure(Gen& g) {
  Measure m;
  m.quantity = g.quantity();
  const int kind = g.between(0, 2);
  if (kind == 0) m.nominalValue = "U+2300 " + g.positive_decimal(300, 2);
  else if (kind == 1) m.nominalValue = g.positive_decimal(500, 2);
  else m.nominalValue = std::to_string(g.between(1, 179)) + "\xC2\xB0";
  switch (g.between(0, 3)) {
    case 0: break;
    case 1: m.tolerance = "\xC2\xB1" + g.positive_decimal(1, 3); break;
    case 2:
      m.upperLimit = "+" + g.positive_decimal(1, 3);
      m.lowerLimit = "-" + g.positive_decimal(1, 3);
      break;
    default:
      // Both limits on one side: +0.3 +0.1
      m.upperLimit = "+0." + std::to_string(g.between(2, 9));
      m.lowerLimit = "+0.1";
      break;
  }
  if (g.coin(0.3)) {
    m.feature = g.pick(std::vector<std::string>{"Shaft Length", "Diameter", "Slot", "Bore",
                                                "Hole depth", "Chamfer", "Width"});
  }
  return m;
}

inline ThreadSpec gen_thread(Gen& g) {
  ThreadSpec t;
  t.quantity = g.quantity();
  const std::string series = g.pick(std::vector<std::string>{"M", "M", "MF", "G", "Tr", "Rc"});
  t.designation = series + std::to_string(g.between(1, 64));
  if (g.coin(0.4)) t.designation += "\xC3\x97" + g.positive_decimal(6, 2);
  if (g.coin(0.3)) {
    t.fitClass = std::to_string(g.between(4, 8)) + g.pick(std::vector<std::string>{"H", "g", "h", "G"});
    if (g.coin(0.2)) t.fitClass += std::to_string(g.between(4, 8)) + "h";
  }
  const int depth = g.between(0, 2);
  if (depth == 1) t.depthQualifier = "THRU";
  if (depth == 2) t.depthQualifier = g.positive_decimal(60, 1);
  return t;
}

inline SurfaceRoughnessSpec gen_roughness(Gen& g) {
  if (g.coin(0.3)) return {RoughnessParameter::NGrade, "N" + std::to_string(g.between(1, 12))};
  return {RoughnessParameter::Ra, g.positive_decimal(50, 3) + " \xC2\xB5m"};
}

inline RadiusSpec gen_radius(Gen& g) {
  RadiusSpec r;
  r.quantity = g.quantity();
  r.value = "R" + g.positive_decimal(200, 2);
  return r;
}

inline TitleBlock gen_title_block(Gen& g) {
  static const std::vector<std::string> keys = {"Designer", "Date",  "Scale", "Drawing Name",
                                                "Material", "Sheet", "Rev",   "Checked by"};
  TitleBlock t;
  std::vector<std::string> used;
  const int n = g.between(1, 6);
  for (int i = 0; i < n; ++i) {
    std::string k = g.pick(keys);
    if (std::find(used.begin(), used.end(), k) != used.end()) k += " " + std::to_string(i);
    used.push_back(k);
    t.entries.emplace_back(k, g.coin(0.1) ? std::string() : g.words(1, 4));
  }
  return t;
}

inline AnnotationRecord gen_record(Category c, Gen& g) {
  switch (c) {
    case Category::GDT: return gen_gdt(g);
    case Category::GeneralTolerance: return GeneralToleranceSpec{g.words(1, 8)};
    case Category::Measure: return gen_measure(g);
    case Category::Material: return MaterialSpec{g.words(1, 3)};
    case Category::Note: {
      NotesBlock n;
      const int lines = g.between(1, 5);
      for (int i = 0; i < lines; ++i) n.lines.push_back(g.words(1, 9));
      return n;
    }
    case Category::Radius: return gen_radius(g);
    case Category::SurfaceRoughness: return gen_roughness(g);
    case Category::Thread: return gen_thread(g);
    case Category::TitleBlock: return gen_title_block(g);
  }
  return GdtFrames{};
}

inline DrawingDocument gen_document(Gen& g) {
  DrawingDocument doc;
  for (Category c : kAllCategories) {
    const int n = g.between(0, 3);
    for (int i = 0; i < n; ++i) add_record(doc, gen_record(c, g));
  }
  return doc;
}

}  // namespace drawparse::testing
