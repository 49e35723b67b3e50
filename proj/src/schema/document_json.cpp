// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>

#include <json.hpp>

#include "drawparse/notation.hpp"
#include "drawparse/schema.hpp"

namespace drawparse {
namespace {

using Json = nlohmann::ordered_json;
using namespace notation;  // NOLINT

// --- emitter ---------------------------------------------------------------
//
// Top-level objects and the objects directly under them are laid out one
// member per line; arrays of objects one element per line; everything deeper
// is written inline with ", " and ": " separators.

std::string quote(const std::string& s) {
  return Json(s).dump(-1, ' ', false, Json::error_handler_t::replace);
}

void emit(std::string& out, const Json& v, int depth, bool inline_only);

void emit_inline(std::string& out, const Json& v) { emit(out, v, 0, true); }

void emit(std::string& out, const Json& v, int depth, bool inline_only) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  if (v.is_string()) {
    out += quote(v.get<std::string>());
  } else if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    const bool block = !inline_only && depth <= 1;
    out += block ? "{\n" : "{";
    bool first = true;
    for (const auto& [k, child] : v.items()) {
      if (!first) out += block ? ",\n" : ", ";
      first = false;
      if (block) out += inner;
      out += quote(k) + ": ";
      emit(out, child, depth + 1, !block);
    }
    out += block ? "\n" + pad + "}" : "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    bool block = !inline_only;
    if (block) {
      for (const auto& e : v) block = block && e.is_object();
    }
    out += block ? "[\n" : "[";
    bool first = true;
    for (const auto& e : v) {
      if (!first) out += block ? ",\n" : ", ";
      first = false;
      if (block) out += inner;
      emit_inline(out, e);
    }
    out += block ? "\n" + pad + "]" : "]";
  } else {
    out += v.dump();
  }
}

std::string emit_top(const Json& v) {
  std::string out;
  emit(out, v, 0, false);
  out += "\n";
  return out;
}

// --- parse helpers ---------------------------------------------------------

[[noreturn]] void violation(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaViolation, msg, path);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) violation(path + "." + key, "missing key '" + key + "'");
  return *it;
}

std::string string_value(const Json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_null()) return {};
  violation(path, "expected a string");
}

std::string string_member(const Json& obj, const std::string& key,
                          const std::string& path, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) violation(path + "." + key, "missing key '" + key + "'");
    return {};
  }
  return string_value(*it, path + "." + key);
}

/// List slot: "" and [] both mean empty.
std::vector<const Json*> list_slot(const Json& v, const std::string& path) {
  std::vector<const Json*> out;
  if (v.is_string() && v.get<std::string>().empty()) return out;
  if (v.is_null()) return out;
  if (!v.is_array()) violation(path, "expected a list or \"\"");
  for (const auto& e : v) out.push_back(&e);
  return out;
}

std::vector<std::string> string_list(const Json& v, const std::string& path) {
  std::vector<std::string> out;
  auto items = list_slot(v, path);
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back(string_value(*items[i], path + "." + std::to_string(i + 1)));
  }
  return out;
}

const Json& expect_object(const Json& v, const std::string& path) {
  if (!v.is_object()) violation(path, "expected an object");
  return v;
}

/// Wraps notation errors raised while decoding a field.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaViolation) throw;
    violation(path, std::string(error_code_name(e.code())) + ": " + e.detail());
  }
}

std::optional<int> quantity_value(const Json& v, const std::string& path) {
  if (v.is_number_integer()) {
    const auto n = v.get<long long>();
    if (n <= 0 || n > 1000000) violation(path, "quantity must be a positive integer");
    return static_cast<int>(n);
  }
  std::string s = trim(string_value(v, path));
  if (s.empty()) return std::nullopt;
  auto q = parse_count(s);
  if (!q) violation(path, "quantity must be a positive integer");
  return q;
}

std::string quantity_text(const std::optional<int>& q) {
  return q ? std::to_string(*q) : std::string();
}

char32_t characteristic_value(const std::string& text, const std::string& path) {
  if (auto cp = parse_codepoint_escape(text)) return *cp;
  if (auto cp = utf8_single_scalar(text)) return *cp;
  return at_path(path, [&] { return lookup_gdt_symbol(trim(text)); });
}

/// Accepts a raw diameter glyph in patch-dialect nominals.
std::string nominal_text(const std::string& text) {
  std::string s = trim(text);
  for (std::string_view glyph : {kDiameterGlyph, kDiameterGlyphLatin}) {
    if (s.rfind(glyph, 0) == 0) {
      return "U+2300 " + trim(std::string_view(s).substr(glyph.size()));
    }
  }
  if (s.rfind("U+2300", 0) == 0) return "U+2300 " + trim(std::string_view(s).substr(6));
  return s;
}

std::string depth_text(const std::string& text) {
  std::string s = trim(text);
  return s == "THROUGH" ? "THRU" : s;
}

void check(const ValidationResult& r) {
  if (r.ok()) return;
  std::string msg = r.violations.front().message;
  if (r.violations.size() > 1) {
    msg += " (+" + std::to_string(r.violations.size() - 1) + " more)";
  }
  violation(r.violations.front().path, msg);
}

// --- patch dialect records -------------------------------------------------

Json patch_frame(const GdtFrame& f) {
  Json datums = Json::array();
  for (const auto& d : f.datums) datums.push_back(d);
  return Json{{"index", f.index},
              {"geometricCharacteristic", format_codepoint_escape(f.characteristic)},
              {"tolerance", f.tolerance},
              {"datumReference", datums}};
}

Json patch_measure(const Measure& m) {
  Json j{{"quantity", quantity_text(m.quantity)},
         {"nominalValue", m.nominalValue},
         {"tolerance", m.tolerance},
         {"upperLimit", m.upperLimit},
         {"lowerLimit", m.lowerLimit}};
  if (!m.feature.empty()) j["feature"] = m.feature;
  if (!m.displayValue.empty()) j["displayValue"] = m.displayValue;
  return j;
}

Json patch_thread(const ThreadSpec& t) {
  return Json{{"quantity", quantity_text(t.quantity)},
              {"designation", t.designation},
              {"fitClass", t.fitClass},
              {"depthQualifier", t.depthQualifier}};
}

Json patch_roughness(const SurfaceRoughnessSpec& s) {
  return Json{{"parameter", s.parameter == RoughnessParameter::Ra ? "Ra" : "N-grade"},
              {"value", s.value}};
}

Json patch_radius(const RadiusSpec& r) {
  return Json{{"quantity", quantity_text(r.quantity)}, {"value", r.value}};
}

Json patch_title_block(const TitleBlock& t) {
  Json j = Json::object();
  for (const auto& [k, v] : t.entries) j[k] = v;
  return j;
}

Json patch_notes(const NotesBlock& n) {
  Json lines = Json::array();
  for (const auto& l : n.lines) lines.push_back(l);
  return Json{{"lines", lines}};
}

GdtFrame frame_from_patch(const Json& j, const std::string& p) {
  expect_object(j, p);
  GdtFrame f;
  const Json& idx = member(j, "index", p);
  if (idx.is_number_integer()) {
    f.index = static_cast<int>(idx.get<long long>());
  } else {
    auto n = parse_count(trim(string_value(idx, p + ".index")));
    if (!n) violation(p + ".index", "index must be a positive integer");
    f.index = *n;
  }
  f.characteristic = characteristic_value(
      string_member(j, "geometricCharacteristic", p), p + ".geometricCharacteristic");
  const std::string tol = string_member(j, "tolerance", p);
  f.tolerance = at_path(p + ".tolerance", [&] { return canonical_tolerance(tol); });
  auto it = j.find("datumReference");
  if (it != j.end()) {
    for (auto& d : string_list(*it, p + ".datumReference")) f.datums.push_back(trim(d));
  }
  return f;
}

Measure measure_from_patch(const Json& j, const std::string& p) {
  expect_object(j, p);
  Measure m;
  if (auto it = j.find("quantity"); it != j.end()) {
    m.quantity = quantity_value(*it, p + ".quantity");
  }
  m.nominalValue = nominal_text(string_member(j, "nominalValue", p));
  m.tolerance = trim(string_member(j, "tolerance", p, false));
  m.upperLimit = trim(string_member(j, "upperLimit", p, false));
  m.lowerLimit = trim(string_member(j, "lowerLimit", p, false));
  m.feature = normalize_space(string_member(j, "feature", p, false));
  m.displayValue = normalize_space(string_member(j, "displayValue", p, false));
  return m;
}

ThreadSpec thread_from_patch(const Json& j, const std::string& p) {
  expect_object(j, p);
  ThreadSpec t;
  if (auto it = j.find("quantity"); it != j.end()) {
    t.quantity = quantity_value(*it, p + ".quantity");
  }
  t.designation = trim(string_member(j, "designation", p));
  t.fitClass = trim(string_member(j, "fitClass", p, false));
  t.depthQualifier = depth_text(string_member(j, "depthQualifier", p, false));
  return t;
}

SurfaceRoughnessSpec roughness_from_patch(const Json& j, const std::string& p) {
  expect_object(j, p);
  SurfaceRoughnessSpec s;
  const std::string param = trim(string_member(j, "parameter", p));
  if (param == "Ra") {
    s.parameter = RoughnessParameter::Ra;
  } else if (param == "N-grade" || param == "N") {
    s.parameter = RoughnessParameter::NGrade;
  } else {
    violation(p + ".parameter", "parameter must be Ra or N-grade");
  }
  s.value = trim(string_member(j, "value", p));
  return s;
}

RadiusSpec radius_from_patch(const Json& j, const std::string& p) {
  expect_object(j, p);
  RadiusSpec r;
  if (auto it = j.find("quantity"); it != j.end()) {
    r.quantity = quantity_value(*it, p + ".quantity");
  }
  r.value = trim(string_member(j, "value", p));
  return r;
}

TitleBlock title_block_from_object(const Json& j, const std::string& p) {
  expect_object(j, p);
  TitleBlock t;
  for (const auto& [k, v] : j.items()) {
    t.entries.emplace_back(normalize_space(k),
                           normalize_space(string_value(v, p + "." + k)));
  }
  return t;
}

NotesBlock notes_from_patch(const Json& j, const std::string& p) {
  expect_object(j, p);
  NotesBlock n;
  for (auto& l : string_list(member(j, "lines", p), p + ".lines")) {
    n.lines.push_back(normalize_space(l));
  }
  return n;
}

std::string single_text(const Json& j, const std::string& key, const std::string& p) {
  expect_object(j, p);
  return normalize_space(string_member(j, key, p));
}

// --- document dialect ------------------------------------------------------

Json list_or_empty(Json arr) {
  if (arr.empty()) return "";
  return arr;
}

NotesBlock notes_from_text(const std::string& text) {
  NotesBlock n;
  for (const auto& line : split_lines(text)) {
    std::string l = normalize_space(line);
    if (!l.empty()) n.lines.push_back(std::move(l));
  }
  return n;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += "\n";
    out += lines[i];
  }
  return out;
}

Json document_json(const DrawingDocument& doc) {
  Json j = Json::object();
  j["Material"] = doc.material ? doc.material->designation : "";
  Json threads = Json::array();
  for (const auto& t : doc.threads) threads.push_back(Json{{"Type", format_thread(t)}});
  j["Threads"] = list_or_empty(threads);
  Json gdts = Json::array();
  for (const auto& f : doc.gdts) {
    Json datums = Json::array();
    for (const auto& d : f.datums) datums.push_back(d);
    gdts.push_back(Json{{"Type", gdt_symbol_name(f.characteristic)},
                        {"Tolerance", tolerance_to_document(f.tolerance)},
                        {"Datums", datums}});
  }
  j["GD&T"] = list_or_empty(gdts);
  j["General Tolerance"] = doc.generalTolerance ? doc.generalTolerance->text : "";
  Json radii = Json::array();
  for (const auto& r : doc.radii) radii.push_back(format_radius(r));
  j["Radii"] = list_or_empty(radii);
  Json rough = Json::array();
  for (const auto& s : doc.surfaceRoughness) rough.push_back(Json{{"Ra", s.value}});
  j["Surface Roughness"] = list_or_empty(rough);
  Json measures = Json::array();
  for (const auto& m : doc.measures) {
    measures.push_back(Json{{"Feature", m.feature}, {"Value", measure_document_value(m)}});
  }
  j["Measures"] = list_or_empty(measures);
  j["Title Block"] = doc.titleBlock ? patch_title_block(*doc.titleBlock) : Json("");
  j["Notes"] = doc.notes ? join_lines(doc.notes->lines) : "";
  return j;
}

Json patch_json(const DrawingDocument& doc) {
  Json j = Json::object();
  auto list = [](auto&& items, auto&& fn) {
    Json arr = Json::array();
    for (const auto& x : items) arr.push_back(fn(x));
    return arr;
  };
  j["GD&Ts"] = list(doc.gdts, patch_frame);
  j["General Tolerance"] = Json::array();
  if (doc.generalTolerance) j["General Tolerance"].push_back(Json{{"text", doc.generalTolerance->text}});
  j["Measures"] = list(doc.measures, patch_measure);
  j["Material"] = Json::array();
  if (doc.material) j["Material"].push_back(Json{{"designation", doc.material->designation}});
  j["Notes"] = Json::array();
  if (doc.notes) j["Notes"].push_back(patch_notes(*doc.notes));
  j["Radii"] = list(doc.radii, patch_radius);
  j["Surface Roughness"] = list(doc.surfaceRoughness, patch_roughness);
  j["Threads"] = list(doc.threads, patch_thread);
  j["Title Block"] = Json::array();
  if (doc.titleBlock) j["Title Block"].push_back(patch_title_block(*doc.titleBlock));
  return j;
}

void expect_keys(const Json& j, SchemaDialect dialect) {
  for (Category c : kAllCategories) {
    const std::string key(dialect == SchemaDialect::Patch ? patch_key(c) : document_key(c));
    if (!j.contains(key)) violation(key, "missing category key '" + key + "'");
  }
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (Category c : kAllCategories) {
      known = known ||
              k == (dialect == SchemaDialect::Patch ? patch_key(c) : document_key(c));
    }
    if (!known) violation(k, "unknown key '" + k + "'");
  }
}

std::optional<std::string> optional_text(const Json& v, const std::string& path) {
  if (v.is_object()) {
    for (const char* key : {"designation", "text"}) {
      if (v.contains(key)) return optional_text(v.at(key), path + "." + key);
    }
    violation(path, "expected a string");
  }
  std::string s = normalize_space(string_value(v, path));
  if (s.empty()) return std::nullopt;
  return s;
}

DrawingDocument document_from_json(const Json& j) {
  expect_keys(j, SchemaDialect::Document);
  DrawingDocument doc;
  if (auto s = optional_text(j.at("Material"), "material")) doc.material = MaterialSpec{*s};
  auto threads = list_slot(j.at("Threads"), "threads");
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const std::string p = "threads." + std::to_string(i + 1);
    const std::string text = threads[i]->is_object() ? string_member(*threads[i], "Type", p)
                                                     : string_value(*threads[i], p);
    doc.threads.push_back(at_path(p, [&] { return thread_from_callout(text); }));
  }
  auto gdts = list_slot(j.at("GD&T"), "gdts");
  for (std::size_t i = 0; i < gdts.size(); ++i) {
    const std::string p = "gdts." + std::to_string(i + 1);
    const Json& g = expect_object(*gdts[i], p);
    GdtFrame f;
    f.index = static_cast<int>(i) + 1;
    f.characteristic = characteristic_value(string_member(g, "Type", p), p + ".Type");
    const std::string tol = string_member(g, "Tolerance", p);
    f.tolerance = at_path(p + ".Tolerance", [&] { return canonical_tolerance(tol); });
    if (auto it = g.find("Datums"); it != g.end()) {
      for (auto& d : string_list(*it, p + ".Datums")) f.datums.push_back(trim(d));
    }
    doc.gdts.push_back(std::move(f));
  }
  if (auto s = optional_text(j.at("General Tolerance"), "generalTolerance")) {
    doc.generalTolerance = GeneralToleranceSpec{*s};
  }
  auto radii = list_slot(j.at("Radii"), "radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const std::string p = "radii." + std::to_string(i + 1);
    const std::string text = string_value(*radii[i], p);
    doc.radii.push_back(at_path(p, [&] { return radius_from_callout(text); }));
  }
  auto rough = list_slot(j.at("Surface Roughness"), "surfaceRoughness");
  for (std::size_t i = 0; i < rough.size(); ++i) {
    const std::string p = "surfaceRoughness." + std::to_string(i + 1);
    const std::string v = trim(string_member(expect_object(*rough[i], p), "Ra", p));
    const bool grade = v.size() >= 2 && v[0] == 'N' && std::isdigit(static_cast<unsigned char>(v[1]));
    doc.surfaceRoughness.push_back(
        at_path(p, [&] { return roughness_from_callout(grade ? v : "Ra " + v); }));
  }
  auto measures = list_slot(j.at("Measures"), "measures");
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const std::string p = "measures." + std::to_string(i + 1);
    const Json& m = expect_object(*measures[i], p);
    const std::string value = string_member(m, "Value", p);
    Measure rec = at_path(p + ".Value", [&] { return measure_from_callout(value); });
    rec.feature = normalize_space(string_member(m, "Feature", p, false));
    doc.measures.push_back(std::move(rec));
  }
  const Json& tb = j.at("Title Block");
  if (!(tb.is_string() && tb.get<std::string>().empty()) && !tb.is_null()) {
    doc.titleBlock = title_block_from_object(tb, "titleBlock");
  }
  const Json& notes = j.at("Notes");
  if (notes.is_array()) {
    NotesBlock n;
    for (auto& l : string_list(notes, "notes")) {
      std::string s = normalize_space(l);
      if (!s.empty()) n.lines.push_back(std::move(s));
    }
    if (!n.lines.empty()) doc.notes = std::move(n);
  } else {
    NotesBlock n = notes_from_text(string_value(notes, "notes"));
    if (!n.lines.empty()) doc.notes = std::move(n);
  }
  return doc;
}

template <typename F>
void each_patch(const Json& j, Category c, const std::string& path, F&& fn) {
  auto items = list_slot(j.at(std::string(patch_key(c))), path);
  for (std::size_t i = 0; i < items.size(); ++i) {
    fn(*items[i], path + "." + std::to_string(i + 1));
  }
}

template <typename T>
std::optional<T> singleton(const Json& j, Category c, const std::string& path,
                           T (*fn)(const Json&, const std::string&)) {
  auto items = list_slot(j.at(std::string(patch_key(c))), path);
  if (items.empty()) return std::nullopt;
  if (items.size() > 1) violation(path, "at most one record is allowed");
  return fn(*items[0], path);
}

MaterialSpec material_from_patch(const Json& j, const std::string& p) {
  return MaterialSpec{single_text(j, "designation", p)};
}

GeneralToleranceSpec general_tolerance_from_patch(const Json& j, const std::string& p) {
  return GeneralToleranceSpec{single_text(j, "text", p)};
}

DrawingDocument patch_document_from_json(const Json& j) {
  expect_keys(j, SchemaDialect::Patch);
  DrawingDocument doc;
  each_patch(j, Category::GDT, "gdts",
             [&](const Json& e, const std::string& p) { doc.gdts.push_back(frame_from_patch(e, p)); });
  each_patch(j, Category::Measure, "measures", [&](const Json& e, const std::string& p) {
    doc.measures.push_back(measure_from_patch(e, p));
  });
  each_patch(j, Category::Thread, "threads", [&](const Json& e, const std::string& p) {
    doc.threads.push_back(thread_from_patch(e, p));
  });
  each_patch(j, Category::SurfaceRoughness, "surfaceRoughness",
             [&](const Json& e, const std::string& p) {
               doc.surfaceRoughness.push_back(roughness_from_patch(e, p));
             });
  each_patch(j, Category::Radius, "radii", [&](const Json& e, const std::string& p) {
    doc.radii.push_back(radius_from_patch(e, p));
  });
  doc.material = singleton(j, Category::Material, "material", material_from_patch);
  doc.generalTolerance =
      singleton(j, Category::GeneralTolerance, "generalTolerance", general_tolerance_from_patch);
  doc.titleBlock = singleton(j, Category::TitleBlock, "titleBlock", title_block_from_object);
  doc.notes = singleton(j, Category::Note, "notes", notes_from_patch);
  return doc;
}

std::optional<SchemaDialect> detect(const Json& j) {
  if (!j.is_object()) return std::nullopt;
  const bool doc = j.contains("GD&T");
  const bool patch = j.contains("GD&Ts");
  if (doc == patch) return std::nullopt;
  return doc ? SchemaDialect::Document : SchemaDialect::Patch;
}

}  // namespace

std::optional<SchemaDialect> parse_dialect(std::string_view text) noexcept {
  if (text == "patch") return SchemaDialect::Patch;
  if (text == "document") return SchemaDialect::Document;
  return std::nullopt;
}

std::string serialize_document(const DrawingDocument& doc, SchemaDialect dialect) {
  return emit_top(dialect == SchemaDialect::Document ? document_json(doc) : patch_json(doc));
}

std::optional<SchemaDialect> detect_dialect(std::string_view text) {
  try {
    return detect(Json::parse(text.begin(), text.end()));
  } catch (const nlohmann::json::parse_error&) {
    return std::nullopt;
  }
}

DrawingDocument parse_document(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) violation("", "document must be a JSON object");
  auto dialect = detect(j);
  if (!dialect) {
    violation("GD&T", j.contains("GD&T") ? "both GD&T and GD&Ts keys present"
                                         : "missing category keys");
  }
  DrawingDocument doc;
  try {
    doc = *dialect == SchemaDialect::Document ? document_from_json(j)
                                              : patch_document_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    violation("", e.what());
  }
  check(validate_document(doc));
  return doc;
}

std::string serialize_patch_label(const AnnotationRecord& record) {
  const Category c = category_of(record);
  Json arr = Json::array();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GdtFrames>) {
          for (const auto& f : r.frames) arr.push_back(patch_frame(f));
        } else if constexpr (std::is_same_v<T, Measure>) {
          arr.push_back(patch_measure(r));
        } else if constexpr (std::is_same_v<T, ThreadSpec>) {
          arr.push_back(patch_thread(r));
        } else if constexpr (std::is_same_v<T, SurfaceRoughnessSpec>) {
          arr.push_back(patch_roughness(r));
        } else if constexpr (std::is_same_v<T, RadiusSpec>) {
          arr.push_back(patch_radius(r));
        } else if constexpr (std::is_same_v<T, MaterialSpec>) {
          arr.push_back(Json{{"designation", r.designation}});
        } else if constexpr (std::is_same_v<T, GeneralToleranceSpec>) {
          arr.push_back(Json{{"text", r.text}});
        } else if constexpr (std::is_same_v<T, NotesBlock>) {
          arr.push_back(patch_notes(r));
        } else if constexpr (std::is_same_v<T, TitleBlock>) {
          arr.push_back(patch_title_block(r));
        }
      },
      record);
  Json j = Json::object();
  j[std::string(patch_key(c))] = arr;
  return emit_top(j);
}

AnnotationRecord parse_patch_label(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object() || j.size() != 1) {
    violation("", "patch label must hold exactly one category key");
  }
  const std::string key = j.begin().key();
  std::optional<Category> cat;
  for (Category c : kAllCategories) {
    if (key == patch_key(c)) cat = c;
  }
  if (!cat) violation(key, "unknown category key '" + key + "'");
  const Json& v = j.begin().value();
  auto items = list_slot(v, key);
  const std::string base = [&] {
    switch (*cat) {
      case Category::GDT: return std::string("gdts");
      case Category::Measure: return std::string("measures");
      case Category::Thread: return std::string("threads");
      case Category::SurfaceRoughness: return std::string("surfaceRoughness");
      case Category::Radius: return std::string("radii");
      case Category::Material: return std::string("material");
      case Category::GeneralTolerance: return std::string("generalTolerance");
      case Category::Note: return std::string("notes");
      case Category::TitleBlock: return std::string("titleBlock");
    }
    return std::string();
  }();
  if (items.empty()) violation(base, "at least one record is required");
  if (*cat != Category::GDT && items.size() != 1) {
    violation(base, "exactly one record is required");
  }
  AnnotationRecord record;
  try {
    const std::string p1 = base + ".1";
    switch (*cat) {
      case Category::GDT: {
        GdtFrames frames;
        for (std::size_t i = 0; i < items.size(); ++i) {
          frames.frames.push_back(frame_from_patch(*items[i], base + "." + std::to_string(i + 1)));
        }
        record = std::move(frames);
        break;
      }
      case Category::Measure: record = measure_from_patch(*items[0], p1); break;
      case Category::Thread: record = thread_from_patch(*items[0], p1); break;
      case Category::SurfaceRoughness: record = roughness_from_patch(*items[0], p1); break;
      case Category::Radius: record = radius_from_patch(*items[0], p1); break;
      case Category::Material: record = material_from_patch(*items[0], base); break;
      case Category::GeneralTolerance:
        record = general_tolerance_from_patch(*items[0], base);
        break;
      case Category::Note: record = notes_from_patch(*items[0], base); break;
      case Category::TitleBlock: record = title_block_from_object(*items[0], base); break;
    }
  } catch (const nlohmann::json::exception& e) {
    violation(base, e.what());
  }
  check(validate_record(*cat, record));
  return record;
}

}  // namespace drawparse
