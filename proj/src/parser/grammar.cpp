// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include "drawparse/notation.hpp"
#include "drawparse/parser.hpp"

namespace drawparse {
namespace {

using namespace notation;  // NOLINT

/// "|A|B|" frame borders leave empty outer compartments.
std::vector<std::string> split_pipes(std::string_view line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = line.find('|', start);
    parts.push_back(trim(line.substr(start, bar == std::string_view::npos
                                                ? std::string_view::npos
                                                : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (parts.size() > 1 && parts.front().empty()) parts.erase(parts.begin());
  if (parts.size() > 1 && parts.back().empty()) parts.pop_back();
  return parts;
}

std::vector<std::string> split_wide_spaces(std::string_view line) {
  std::vector<std::string> parts;
  std::string cur;
  std::size_t i = 0;
  const std::string s = trim(line);
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      std::size_t j = i;
      while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
      if (j - i >= 2 || s[i] == '\t') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(' ');
      }
      i = j;
    } else {
      cur.push_back(s[i++]);
    }
  }
  parts.push_back(cur);
  return parts;
}

bool is_modifier(std::string_view s) { return s == "(M)" || s == "(L)" || s == "(S)"; }

bool is_diameter_token(std::string_view s) {
  return s == kDiameterEscape || s == kDiameterGlyph || s == kDiameterGlyphLatin;
}

/// Single-space transcription: symbol, tolerance tokens, datums.
std::vector<std::string> scan_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  {
    std::string s = normalize_space(line);
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t j = s.find(' ', i);
      if (j == std::string::npos) j = s.size();
      tokens.push_back(s.substr(i, j - i));
      i = j + 1;
    }
  }
  std::vector<std::string> parts;
  if (tokens.empty()) return parts;
  std::size_t i = 0;
  // Symbol names can be several words ("Total runout").
  std::size_t best = 0;
  for (std::size_t n = 1; n <= std::min<std::size_t>(4, tokens.size()); ++n) {
    std::string cand = tokens[0];
    for (std::size_t k = 1; k < n; ++k) cand += " " + tokens[k];
    try {
      lookup_gdt_symbol(cand);
      best = n;
    } catch (const Error&) {
    }
  }
  const std::size_t symbolTokens = best ? best : 1;
  std::string symbol = tokens[0];
  for (std::size_t k = 1; k < symbolTokens; ++k) symbol += " " + tokens[k];
  parts.push_back(symbol);
  i = symbolTokens;

  std::string tol;
  if (i < tokens.size() && is_diameter_token(tokens[i])) tol = tokens[i++] + " ";
  if (i < tokens.size()) tol += tokens[i++];
  if (i < tokens.size() && is_modifier(tokens[i])) tol += " " + tokens[i++];
  parts.push_back(trim(tol));
  for (; i < tokens.size(); ++i) {
    if (is_modifier(tokens[i]) && parts.size() > 2) {
      parts.back() += " " + tokens[i];
    } else {
      parts.push_back(tokens[i]);
    }
  }
  return parts;
}

char32_t resolve_symbol(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::UnknownSymbol, "missing characteristic symbol");
  std::optional<char32_t> cp = parse_codepoint_escape(text);
  if (!cp) cp = utf8_single_scalar(text);
  if (cp) {
    if (!is_gdt_symbol(*cp)) {
      throw Error(ErrorCode::UnknownSymbol,
                  format_codepoint_escape(*cp) + " is not a GD&T characteristic");
    }
    return *cp;
  }
  return lookup_gdt_symbol(text);
}

GdtFrame parse_frame_line(std::string_view raw) {
  const std::string line = normalize_symbols(raw);
  std::vector<std::string> parts;
  if (line.find('|') != std::string::npos) {
    parts = split_pipes(line);
  } else {
    parts = split_wide_spaces(line);
    if (parts.size() < 2) parts = scan_tokens(line);
  }
  GdtFrame f;
  f.characteristic = resolve_symbol(normalize_space(parts[0]));
  if (parts.size() < 2 || normalize_space(parts[1]).empty()) {
    throw Error(ErrorCode::EmptyTolerance, "tolerance compartment is empty");
  }
  f.tolerance = canonical_tolerance(parts[1]);
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const std::string d = normalize_space(parts[i]);
    if (!is_datum_label(d)) {
      throw Error(ErrorCode::MalformedDatum, "'" + d + "' is not a datum reference");
    }
    f.datums.push_back(d);
  }
  return f;
}

void ensure_valid(Category c, const AnnotationRecord& r) {
  const auto result = validate_record(c, r);
  if (!result.ok()) {
    throw Error(ErrorCode::SchemaViolation, result.violations.front().message,
                result.violations.front().path);
  }
}

std::string require_text(std::string_view text, std::string_view what) {
  std::string s = normalize_space(text);
  if (s.empty()) throw Error(ErrorCode::MalformedText, std::string(what) + " is empty");
  return s;
}

constexpr std::string_view kFeatureHeader = "@feature:";

}  // namespace

std::vector<GdtFrame> parse_gdt(std::string_view text) {
  std::vector<GdtFrame> frames;
  for (const auto& line : split_lines(text)) {
    if (trim(line).empty()) continue;
    GdtFrame f = parse_frame_line(line);
    f.index = static_cast<int>(frames.size()) + 1;
    frames.push_back(std::move(f));
  }
  if (frames.empty()) throw Error(ErrorCode::MalformedText, "no feature control frame");
  return frames;
}

Measure parse_measure(std::string_view text) { return measure_from_callout(text); }

ThreadSpec parse_thread(std::string_view text) { return thread_from_callout(text); }

SurfaceRoughnessSpec parse_surface_roughness(std::string_view text) {
  return roughness_from_callout(text);
}

RadiusSpec parse_radius(std::string_view text) { return radius_from_callout(text); }

AnnotationRecord parse_annotation(Category category, std::string_view text) {
  AnnotationRecord record;
  switch (category) {
    case Category::GDT:
      record = GdtFrames{parse_gdt(text)};
      break;
    case Category::Measure: {
      std::string feature;
      std::string body;
      for (const auto& line : split_lines(text)) {
        const std::string t = trim(line);
        if (body.empty() && t.rfind(kFeatureHeader, 0) == 0) {
          feature = normalize_space(std::string_view(t).substr(kFeatureHeader.size()));
        } else {
          body += line + "\n";
        }
      }
      Measure m = parse_measure(body);
      m.feature = feature;
      record = std::move(m);
      break;
    }
    case Category::Thread: record = parse_thread(text); break;
    case Category::SurfaceRoughness: record = parse_surface_roughness(text); break;
    case Category::Radius: record = parse_radius(text); break;
    case Category::Material: record = MaterialSpec{require_text(text, "material")}; break;
    case Category::GeneralTolerance:
      record = GeneralToleranceSpec{require_text(text, "general tolerance")};
      break;
    case Category::Note: {
      NotesBlock n;
      for (const auto& line : split_lines(text)) {
        std::string l = normalize_space(line);
        if (!l.empty()) n.lines.push_back(std::move(l));
      }
      if (n.lines.empty()) throw Error(ErrorCode::MalformedText, "notes are empty");
      record = std::move(n);
      break;
    }
    case Category::TitleBlock: {
      TitleBlock t;
      for (const auto& line : split_lines(text)) {
        const std::string l = normalize_space(line);
        if (l.empty()) continue;
        const std::size_t colon = l.find(':');
        if (colon == std::string::npos) {
          throw Error(ErrorCode::MalformedText, "title block line '" + l + "' has no ':'");
        }
        t.entries.emplace_back(trim(std::string_view(l).substr(0, colon)),
                               trim(std::string_view(l).substr(colon + 1)));
      }
      record = std::move(t);
      break;
    }
  }
  ensure_valid(category, record);
  return record;
}

std::string render_annotation(const AnnotationRecord& record) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        std::string out;
        if constexpr (std::is_same_v<T, GdtFrames>) {
          for (const auto& f : r.frames) {
            if (!out.empty()) out += "\n";
            out += format_codepoint_escape(f.characteristic) + " | " + f.tolerance;
            for (const auto& d : f.datums) out += " | " + d;
          }
        } else if constexpr (std::is_same_v<T, Measure>) {
          if (!r.feature.empty()) out = std::string(kFeatureHeader) + " " + r.feature + "\n";
          out += r.displayValue.empty() ? format_measure(r, CalloutStyle::Transcription)
                                        : r.displayValue;
        } else if constexpr (std::is_same_v<T, ThreadSpec>) {
          out = format_thread(r);
        } else if constexpr (std::is_same_v<T, SurfaceRoughnessSpec>) {
          out = format_roughness(r);
        } else if constexpr (std::is_same_v<T, RadiusSpec>) {
          out = format_radius(r);
        } else if constexpr (std::is_same_v<T, MaterialSpec>) {
          out = r.designation;
        } else if constexpr (std::is_same_v<T, GeneralToleranceSpec>) {
          out = r.text;
        } else if constexpr (std::is_same_v<T, NotesBlock>) {
          for (const auto& l : r.lines) {
            if (!out.empty()) out += "\n";
            out += l;
          }
        } else if constexpr (std::is_same_v<T, TitleBlock>) {
          for (const auto& [k, v] : r.entries) {
            if (!out.empty()) out += "\n";
            out += k + ": " + v;
          }
        }
        return out;
      },
      record);
}

}  // namespace drawparse
