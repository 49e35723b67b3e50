// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <cstdio>

#include "drawparse/schema.hpp"

namespace drawparse {
namespace {

constexpr std::array<GdtSymbol, 14> kSymbols = {{
    {"Position", 0x2316},
    {"Flatness", 0x23E5},
    {"Roundness", 0x25CB},
    {"Cylindricity", 0x232D},
    {"Profile of a line", 0x2312},
    {"Profile of a plane", 0x2313},
    {"Parallelism", 0x2225},
    {"Perpendicularity", 0x27C2},
    {"Straightness", 0x23E4},
    {"Concentricity", 0x25CE},
    {"Angularity", 0x2220},
    {"Symmetry", 0x232F},
    {"Circular runout", 0x2197},
    {"Total runout", 0x2330},
}};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::span<const GdtSymbol> gdt_symbol_table() noexcept { return kSymbols; }

char32_t lookup_gdt_symbol(std::string_view name) {
  for (const auto& s : kSymbols) {
    if (iequals(s.name, name)) return s.codepoint;
  }
  throw Error(ErrorCode::UnknownSymbol,
              "'" + std::string(name) + "' is not a GD&T characteristic");
}

std::string gdt_symbol_name(char32_t codepoint) {
  for (const auto& s : kSymbols) {
    if (s.codepoint == codepoint) return std::string(s.name);
  }
  throw Error(ErrorCode::UnknownSymbol,
              format_codepoint_escape(codepoint) + " is not a GD&T symbol");
}

bool is_gdt_symbol(char32_t codepoint) noexcept {
  for (const auto& s : kSymbols) {
    if (s.codepoint == codepoint) return true;
  }
  return false;
}

std::string format_codepoint_escape(char32_t codepoint) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(codepoint));
  return buf;
}

std::optional<char32_t> parse_codepoint_escape(std::string_view text) noexcept {
  if (text.size() != 6 || text[0] != 'U' || text[1] != '+') return std::nullopt;
  char32_t value = 0;
  for (std::size_t i = 2; i < 6; ++i) {
    const char c = text[i];
    value <<= 4;
    if (c >= '0' && c <= '9') {
      value |= static_cast<char32_t>(c - '0');
    } else if (c >= 'A' && c <= 'F') {
      value |= static_cast<char32_t>(c - 'A' + 10);
    } else {
      return std::nullopt;
    }
  }
  return value;
}

std::string utf8_encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::optional<char32_t> utf8_single_scalar(std::string_view text) noexcept {
  if (text.empty()) return std::nullopt;
  const auto b0 = static_cast<unsigned char>(text[0]);
  std::size_t len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    len = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (text.size() != len) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  return cp;
}

}  // namespace drawparse
