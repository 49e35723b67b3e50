// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "drawparse/decide.hpp"
#include "drawparse/notation.hpp"

namespace drawparse {
namespace {

using Row = std::vector<std::string>;

/// Minimal CSV: comma separated, double-quoted fields may hold commas and
/// doubled quotes. Blank lines are skipped.
std::vector<Row> parse_csv(std::string_view text, const std::string& what) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  auto end_row = [&] {
    row.push_back(notation::trim(field));
    field.clear();
    const bool blank = row.size() == 1 && row[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
    any = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(notation::trim(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      end_row();
      ++line;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::InvalidArgument, what + ": unterminated quote", "line " + std::to_string(line));
  }
  if (any || !field.empty()) end_row();
  return rows;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void expect_header(const std::vector<Row>& rows, const Row& header, const std::string& what) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, what + " is empty");
  if (rows.front() != header) {
    std::string want;
    for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
    throw Error(ErrorCode::InvalidArgument, what + " header must be " + want, "line 1");
  }
}

double positive(const std::string& text, const std::string& what, std::size_t line) {
  const auto v = notation::decimal_value(text);
  if (!v || !(*v > 0)) {
    throw Error(ErrorCode::InvalidArgument, what + " must be a positive decimal, got '" + text + "'",
                "line " + std::to_string(line));
  }
  return *v;
}

bool no_coating(std::string_view s) {
  return s.empty() || s == "-" || s == "\xE2\x80\x94" || s == "\xE2\x80\x93" || lower(s) == "none";
}

bool same_material(std::string_view a, std::string_view b) {
  return material_class(a) == material_class(b);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string normalize_size_spec(std::string_view spec) {
  std::string s = notation::normalize_symbols(spec);
  for (std::string_view d : {kDiameterGlyph, kDiameterGlyphLatin, kDiameterEscape}) {
    for (std::size_t p; (p = s.find(d)) != std::string::npos;) s.erase(p, d.size());
  }
  std::string out;
  for (char c : s) {
    if (c == ' ') continue;
    if (c == 'x' || c == 'X') {
      out += "\xC3\x97";  // ×
    } else {
      out += c;
    }
  }
  if (out.size() > 2 && lower(out.substr(out.size() - 2)) == "mm") out.erase(out.size() - 2);
  return out;
}

ToolDatabase parse_tool_db(std::string_view inventoryCsv, std::string_view cuttingCsv) {
  ToolDatabase db;
  const auto inv = parse_csv(inventoryCsv, "inventory");
  expect_header(inv, {"ToolID", "ToolType", "Diameter", "Material", "Coating", "ISOCode"}, "inventory");
  std::set<std::string> ids;
  for (std::size_t i = 1; i < inv.size(); ++i) {
    const Row& r = inv[i];
    const std::string where = "line " + std::to_string(i + 1);
    if (r.size() != 6) throw Error(ErrorCode::InvalidArgument, "inventory row needs 6 fields", where);
    if (r[0].empty()) throw Error(ErrorCode::InvalidArgument, "empty ToolID", where);
    if (!ids.insert(r[0]).second) {
      throw Error(ErrorCode::DuplicateToolId, "tool id '" + r[0] + "' appears twice", where);
    }
    ToolRecord t{r[0], r[1], r[2], r[3], std::nullopt, r[5]};
    if (!no_coating(r[4])) t.coating = r[4];
    db.inventory.push_back(std::move(t));
  }
  const auto cut = parse_csv(cuttingCsv, "cutting data");
  expect_header(cut, {"ToolID", "Material", "Speed", "Feed"}, "cutting data");
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 1; i < cut.size(); ++i) {
    const Row& r = cut[i];
    const std::string where = "line " + std::to_string(i + 1);
    if (r.size() != 4) throw Error(ErrorCode::InvalidArgument, "cutting row needs 4 fields", where);
    if (!ids.count(r[0])) {
      throw Error(ErrorCode::InvalidArgument, "cutting data for unknown tool '" + r[0] + "'", where);
    }
    if (!pairs.emplace(r[0], r[1]).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate cutting data for " + r[0] + " / " + r[1], where);
    }
    CuttingData c;
    c.toolId = r[0];
    c.workpieceMaterial = r[1];
    c.speed = positive(r[2], "Speed", i + 1);
    c.feed = positive(r[3], "Feed", i + 1);
    c.speedText = r[2];
    c.feedText = r[3];
    db.cutting.push_back(std::move(c));
  }
  return db;
}

ToolDatabase load_tool_db(const std::filesystem::path& inventoryFile,
                          const std::filesystem::path& cuttingFile) {
  return parse_tool_db(read_file(inventoryFile), read_file(cuttingFile));
}

const ToolRecord& query_tool(const ToolDatabase& db, std::string_view toolType,
                             std::string_view sizeSpec, std::string_view material) {
  const std::string type = lower(notation::normalize_space(toolType));
  const std::string size = normalize_size_spec(sizeSpec);
  bool sizeMatched = false;
  for (const auto& t : db.inventory) {
    if (lower(notation::normalize_space(t.toolType)) != type) continue;
    if (!size.empty() && normalize_size_spec(t.sizeSpec) != size) continue;
    sizeMatched = true;
    if (material.empty()) return t;
    const bool compatible = std::any_of(db.cutting.begin(), db.cutting.end(), [&](const CuttingData& c) {
      return c.toolId == t.toolId && same_material(c.workpieceMaterial, material);
    });
    if (compatible) return t;
  }
  std::string msg = "no " + std::string(toolType);
  if (!sizeSpec.empty()) msg += " " + std::string(sizeSpec);
  if (sizeMatched) msg += " for material " + std::string(material);
  throw Error(ErrorCode::ToolNotFound, msg + " in inventory");
}

const CuttingData& query_cutting(const ToolDatabase& db, std::string_view toolId,
                                 std::string_view material) {
  for (const auto& c : db.cutting) {
    if (c.toolId == toolId && c.workpieceMaterial == material) return c;
  }
  for (const auto& c : db.cutting) {
    if (c.toolId == toolId && same_material(c.workpieceMaterial, material)) return c;
  }
  throw Error(ErrorCode::NoCuttingData,
              "no cutting data for " + std::string(toolId) + " in " + std::string(material));
}

}  // namespace drawparse
