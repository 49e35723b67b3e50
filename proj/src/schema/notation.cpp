// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include "drawparse/notation.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace drawparse::notation {
namespace {

constexpr char kMark = '\x01';  // stands for a diameter sign while tokenizing
constexpr std::string_view kTimes = "\xC3\x97";     // ×
constexpr std::string_view kPlusMinus = "\xC2\xB1";  // ±
constexpr std::string_view kDegree = "\xC2\xB0";     // °

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  if (from.empty()) return;
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool starts_with(std::string_view s, std::string_view p) {
  return s.substr(0, p.size()) == p;
}

/// Consumes a multiplication marker (X, x or ×) at the front of s.
bool eat_times(std::string_view& s) {
  if (!s.empty() && (s[0] == 'X' || s[0] == 'x')) {
    s.remove_prefix(1);
    return true;
  }
  if (starts_with(s, kTimes)) {
    s.remove_prefix(kTimes.size());
    return true;
  }
  return false;
}

/// Length of the longest decimal prefix of s (0 when none).
std::size_t decimal_prefix(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i == 0) return 0;
  if (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i;
  }
  return i;
}

/// Quantity token such as "8X", "6×". Consumes nothing on failure.
std::optional<int> quantity_token(std::string_view tok) {
  std::size_t i = 0;
  while (i < tok.size() && is_digit(tok[i])) ++i;
  if (i == 0) return std::nullopt;
  std::string_view rest = tok.substr(i);
  if (!eat_times(rest) || !rest.empty()) return std::nullopt;
  return parse_count(tok.substr(0, i));
}

/// Replaces every diameter spelling with kMark glued to what follows.
std::string mark_diameter(std::string s) {
  replace_all(s, "U+2300 ", std::string(1, kMark));
  replace_all(s, "U+2300", std::string(1, kMark));
  for (std::string_view glyph : {kDiameterGlyph, kDiameterGlyphLatin}) {
    replace_all(s, std::string(glyph) + " ", std::string(1, kMark));
    replace_all(s, glyph, std::string(1, kMark));
  }
  return s;
}

/// Nominal token: [mark]decimal[°]. Returns canonical text.
std::optional<std::string> nominal_token(std::string_view tok) {
  bool diameter = false;
  if (!tok.empty() && tok[0] == kMark) {
    diameter = true;
    tok.remove_prefix(1);
  }
  const std::size_t n = decimal_prefix(tok);
  if (n == 0) return std::nullopt;
  std::string_view rest = tok.substr(n);
  std::string out = diameter ? "U+2300 " : "";
  out += tok.substr(0, n);
  if (rest == kDegree) {
    out += kDegree;
  } else if (!rest.empty()) {
    return std::nullopt;
  }
  return out;
}

struct StrictMeasure {
  Measure m;
  bool ok = false;
};

StrictMeasure strict_measure(const std::vector<std::string>& tokens) {
  StrictMeasure r;
  std::size_t i = 0;
  if (i < tokens.size()) {
    if (auto q = quantity_token(tokens[i])) {
      r.m.quantity = q;
      ++i;
    }
  }
  if (i >= tokens.size()) return r;
  auto nominal = nominal_token(tokens[i]);
  if (!nominal) return r;
  r.m.nominalValue = *nominal;
  ++i;
  std::vector<std::string> limits;
  bool unit = false;
  for (; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    if (unit) return r;  // unit must be last
    if (starts_with(tok, kPlusMinus)) {
      std::string_view v = tok.substr(kPlusMinus.size());
      if (!is_decimal(v) || !r.m.tolerance.empty()) return r;
      r.m.tolerance = std::string(tok);
    } else if (auto slash = tok.find('/'); slash != std::string_view::npos) {
      std::string_view a = tok.substr(0, slash);
      std::string_view b = tok.substr(slash + 1);
      if (!is_signed_decimal(a) || !is_signed_decimal(b) || !limits.empty()) {
        return r;
      }
      limits = {std::string(a), std::string(b)};
    } else if (is_signed_decimal(tok) && (tok[0] == '+' || tok[0] == '-')) {
      if (limits.size() >= 2) return r;
      limits.emplace_back(tok);
    } else if (tok == "mm") {
      unit = true;
    } else {
      return r;
    }
  }
  if (!r.m.tolerance.empty() && !limits.empty()) {
    throw Error(ErrorCode::ConflictingTolerances,
                "both a symmetric tolerance and limit deviations are given");
  }
  if (limits.size() == 2) {
    r.m.upperLimit = limits[0];
    r.m.lowerLimit = limits[1];
  } else if (limits.size() == 1) {
    if (limits[0][0] == '-') {
      r.m.lowerLimit = limits[0];
    } else {
      r.m.upperLimit = limits[0];
    }
  }
  r.ok = true;
  return r;
}

std::optional<std::string> lenient_nominal(std::string_view tok) {
  bool diameter = false;
  if (!tok.empty() && tok[0] == kMark) {
    diameter = true;
    tok.remove_prefix(1);
  }
  const std::size_t n = decimal_prefix(tok);
  if (n == 0) return std::nullopt;
  std::string out = diameter ? "U+2300 " : "";
  out += tok.substr(0, n);
  if (starts_with(tok.substr(n), kDegree)) out += kDegree;
  return out;
}

}  // namespace

bool is_fit_class(std::string_view s) noexcept {
  // 6H, 6g, 4h6h
  std::size_t i = 0;
  int groups = 0;
  while (i < s.size()) {
    std::size_t d = i;
    while (d < s.size() && is_digit(s[d])) ++d;
    if (d == i) return false;
    std::size_t a = d;
    while (a < s.size() && std::isalpha(static_cast<unsigned char>(s[a]))) ++a;
    if (a == d) return false;
    i = a;
    ++groups;
  }
  return groups >= 1 && groups <= 2;
}

namespace {

constexpr std::array<std::string_view, 7> kThreadSeries = {"MF", "Tr", "Rc", "Rp",
                                                           "M",  "G",  "R"};

std::optional<std::string_view> thread_series(std::string_view s) {
  for (auto series : kThreadSeries) {
    if (starts_with(s, series) && s.size() > series.size() &&
        is_digit(s[series.size()])) {
      return series;
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::string normalize_space(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

bool is_normalized_text(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (static_cast<unsigned char>(c) < 0x20) return false;
  }
  return normalize_space(text) == text;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    out.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

bool is_decimal(std::string_view text) noexcept {
  return !text.empty() && decimal_prefix(text) == text.size();
}

bool is_signed_decimal(std::string_view text) noexcept {
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) text.remove_prefix(1);
  return is_decimal(text);
}

std::optional<double> decimal_value(std::string_view text) noexcept {
  if (!is_signed_decimal(text)) return std::nullopt;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return negative ? -v : v;
}

bool is_positive_decimal(std::string_view text) noexcept {
  auto v = decimal_value(text);
  return is_decimal(text) && v && *v > 0;
}

std::optional<int> parse_count(std::string_view text) noexcept {
  if (text.empty() || text.size() > 9 || text[0] == '0') return std::nullopt;
  int v = 0;
  for (char c : text) {
    if (!is_digit(c)) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::string normalize_symbols(std::string_view text) {
  std::string s(text);
  replace_all(s, "\xE2\x88\x92", "-");    // − minus sign
  replace_all(s, "\xE2\x93\x82", "(M)");  // Ⓜ
  replace_all(s, "\xE2\x93\x81", "(L)");  // Ⓛ
  replace_all(s, "\xE2\x93\x88", "(S)");  // Ⓢ
  replace_all(s, "\xCE\xBCm", "\xC2\xB5m");  // Greek mu -> micro sign
  return s;
}

// --- tolerance zone --------------------------------------------------------

std::string canonical_tolerance(std::string_view text) {
  std::string s = mark_diameter(normalize_space(normalize_symbols(text)));
  // Split glued modifiers: "0.014(M)" -> "0.014 (M)".
  for (std::string_view mod : {"(M)", "(L)", "(S)"}) {
    replace_all(s, mod, " " + std::string(mod));
  }
  s = normalize_space(s);
  auto tokens = split_tokens(s);
  if (tokens.empty()) {
    throw Error(ErrorCode::EmptyTolerance, "tolerance value is missing");
  }
  std::size_t i = 0;
  bool diameter = false;
  if (tokens[i] == std::string(1, kMark)) {
    diameter = true;
    ++i;
  } else if (tokens[i][0] == kMark) {
    diameter = true;
    tokens[i].erase(0, 1);
  }
  if (i >= tokens.size() || !is_decimal(tokens[i])) {
    bool any_digit = false;
    for (char c : s) any_digit |= is_digit(c);
    if (!any_digit) {
      throw Error(ErrorCode::EmptyTolerance,
                  "tolerance has no numeric value: '" + trim(text) + "'");
    }
    throw Error(ErrorCode::MalformedText,
                "unrecognized tolerance '" + trim(text) + "'");
  }
  std::string out = diameter ? "U+2300 " : "";
  out += tokens[i++];
  if (i < tokens.size()) {
    const auto& mod = tokens[i];
    if (mod != "(M)" && mod != "(L)" && mod != "(S)") {
      throw Error(ErrorCode::MalformedText,
                  "unrecognized tolerance modifier '" + mod + "'");
    }
    out += " " + mod;
    ++i;
  }
  if (i != tokens.size()) {
    throw Error(ErrorCode::MalformedText,
                "trailing text in tolerance '" + trim(text) + "'");
  }
  return out;
}

bool is_canonical_tolerance(std::string_view text) noexcept {
  try {
    return canonical_tolerance(text) == text;
  } catch (const Error&) {
    return false;
  }
}

std::string tolerance_to_document(std::string_view canonical) {
  std::string s(canonical);
  replace_all(s, "U+2300 ", std::string(kDiameterGlyphLatin));
  return s;
}

std::optional<double> tolerance_value(std::string_view canonical) noexcept {
  std::string_view s = canonical;
  if (starts_with(s, "U+2300 ")) s.remove_prefix(7);
  const std::size_t n = decimal_prefix(s);
  if (n == 0) return std::nullopt;
  return decimal_value(s.substr(0, n));
}

// --- datums ----------------------------------------------------------------

bool is_datum_label(std::string_view text) noexcept {
  std::size_t i = 0;
  auto upper = [&](std::size_t k) {
    return k < text.size() && text[k] >= 'A' && text[k] <= 'Z';
  };
  if (!upper(i)) return false;
  ++i;
  while (i + 1 < text.size() && text[i] == '-' && upper(i + 1)) i += 2;
  if (i == text.size()) return true;
  if (text[i] == ' ') ++i;
  std::string_view mod = text.substr(i);
  return mod == "(M)" || mod == "(L)" || mod == "(S)";
}

std::string datum_base(std::string_view label) {
  std::size_t i = 0;
  while (i < label.size() && label[i] != ' ' && label[i] != '(') ++i;
  return std::string(label.substr(0, i));
}

std::string canonicalize_datum(std::string_view label, DatumStyle style) {
  std::string base = datum_base(label);
  std::size_t p = label.find('(');
  if (style == DatumStyle::Verbatim || p == std::string_view::npos) {
    return style == DatumStyle::Verbatim ? std::string(label) : base;
  }
  std::string mod(label.substr(p));
  return style == DatumStyle::Attached ? base + mod : base + " " + mod;
}

// --- measures --------------------------------------------------------------

bool is_nominal(std::string_view text) noexcept {
  std::string_view s = text;
  if (starts_with(s, "U+2300 ")) s.remove_prefix(7);
  const std::size_t n = decimal_prefix(s);
  if (n == 0) return false;
  std::string_view rest = s.substr(n);
  return rest.empty() || rest == kDegree;
}

bool nominal_is_diameter(std::string_view nominal) noexcept {
  return starts_with(nominal, "U+2300 ");
}

std::optional<double> nominal_number(std::string_view nominal) noexcept {
  std::string_view s = nominal;
  if (starts_with(s, "U+2300 ")) s.remove_prefix(7);
  const std::size_t n = decimal_prefix(s);
  if (n == 0) return std::nullopt;
  return decimal_value(s.substr(0, n));
}

std::string format_measure(const Measure& m, CalloutStyle style) {
  std::vector<std::string> parts;
  if (m.quantity) parts.push_back(std::to_string(*m.quantity) + "X");
  if (style == CalloutStyle::Document && nominal_is_diameter(m.nominalValue)) {
    parts.push_back(std::string(kDiameterGlyphLatin) + m.nominalValue.substr(7));
  } else {
    parts.push_back(m.nominalValue);
  }
  parts.push_back(m.tolerance);
  if (style == CalloutStyle::Document && !m.upperLimit.empty() &&
      !m.lowerLimit.empty()) {
    parts.push_back(m.upperLimit + "/" + m.lowerLimit);
  } else {
    parts.push_back(m.upperLimit);
    parts.push_back(m.lowerLimit);
  }
  return join(parts, " ");
}

Measure measure_from_callout(std::string_view text) {
  const std::string display = normalize_space(text);
  std::string s = mark_diameter(normalize_space(normalize_symbols(text)));
  // "± 0.05" -> "±0.05"
  replace_all(s, std::string(kPlusMinus) + " ", kPlusMinus);
  auto tokens = split_tokens(s);
  StrictMeasure strict = strict_measure(tokens);
  Measure m;
  if (strict.ok) {
    m = std::move(strict.m);
  } else {
    std::optional<std::string> nominal;
    std::size_t first = 0;
    if (!tokens.empty() && quantity_token(tokens[0]) && tokens.size() > 1) {
      first = 1;
      m.quantity = quantity_token(tokens[0]);
    }
    if (first < tokens.size()) nominal = lenient_nominal(tokens[first]);
    if (!nominal) {
      throw Error(ErrorCode::NoNominalValue,
                  "no nominal value in '" + display + "'");
    }
    m.nominalValue = *nominal;
  }
  if (display != format_measure(m, CalloutStyle::Transcription) &&
      display != format_measure(m, CalloutStyle::Document)) {
    m.displayValue = display;
  }
  return m;
}

std::string measure_document_value(const Measure& m) {
  if (!m.displayValue.empty()) return m.displayValue;
  return format_measure(m, CalloutStyle::Document);
}

// --- threads ---------------------------------------------------------------

bool is_thread_designation(std::string_view text) noexcept {
  auto series = thread_series(text);
  if (!series) return false;
  std::string_view s = text.substr(series->size());
  const std::size_t n = decimal_prefix(s);
  if (n == 0) return false;
  s.remove_prefix(n);
  if (s.empty()) return true;
  if (!starts_with(s, kTimes)) return false;
  s.remove_prefix(kTimes.size());
  return is_decimal(s);
}

std::optional<double> thread_major_diameter(std::string_view designation) {
  auto series = thread_series(designation);
  if (!series) return std::nullopt;
  std::string_view s = designation.substr(series->size());
  const std::size_t n = decimal_prefix(s);
  return decimal_value(s.substr(0, n));
}

std::string format_thread(const ThreadSpec& t) {
  std::string out;
  if (t.quantity) out += std::to_string(*t.quantity) + std::string(kTimes);
  out += t.designation;
  if (!t.fitClass.empty()) out += "-" + t.fitClass;
  if (t.depthQualifier == "THRU") {
    out += " TAP THRU";
  } else if (!t.depthQualifier.empty()) {
    out += " DEPTH " + t.depthQualifier;
  }
  return out;
}

ThreadSpec thread_from_callout(std::string_view text) {
  const std::string original = normalize_space(text);
  auto tokens = split_tokens(normalize_space(normalize_symbols(text)));
  ThreadSpec t;
  std::size_t i = 0;
  auto fail = [&](ErrorCode code, const std::string& why) -> Error {
    return Error(code, why + " in '" + original + "'");
  };
  if (tokens.empty()) throw fail(ErrorCode::NotAThread, "empty callout");
  if (auto q = quantity_token(tokens[0])) {
    t.quantity = q;
    ++i;
  } else {
    std::string_view tok = tokens[0];
    std::size_t d = 0;
    while (d < tok.size() && is_digit(tok[d])) ++d;
    std::string_view rest = tok.substr(d);
    if (d > 0 && eat_times(rest) && thread_series(rest)) {
      t.quantity = parse_count(tok.substr(0, d));
      if (!t.quantity) throw fail(ErrorCode::MalformedText, "bad quantity");
      tokens[0] = std::string(rest);
    }
  }
  if (i >= tokens.size()) throw fail(ErrorCode::NotAThread, "no designation");
  std::string_view des = tokens[i];
  auto series = thread_series(des);
  if (!series) throw fail(ErrorCode::NotAThread, "no thread series letter");
  des.remove_prefix(series->size());
  const std::size_t n = decimal_prefix(des);
  std::string major(des.substr(0, n));
  des.remove_prefix(n);
  std::string pitch;
  std::string_view probe = des;
  if (eat_times(probe)) {
    const std::size_t pn = decimal_prefix(probe);
    if (pn == 0) throw fail(ErrorCode::MalformedText, "bad pitch");
    pitch = std::string(probe.substr(0, pn));
    des = probe.substr(pn);
  }
  if (!des.empty()) {
    if (des[0] != '-' || !is_fit_class(des.substr(1))) {
      throw fail(ErrorCode::MalformedText, "bad designation suffix");
    }
    t.fitClass = std::string(des.substr(1));
  }
  ++i;
  // Separate pitch token: "X2-6H"
  if (pitch.empty() && t.fitClass.empty() && i < tokens.size()) {
    std::string_view tok = tokens[i];
    if (eat_times(tok)) {
      const std::size_t pn = decimal_prefix(tok);
      if (pn > 0) {
        pitch = std::string(tok.substr(0, pn));
        tok.remove_prefix(pn);
        if (!tok.empty()) {
          if (tok[0] != '-' || !is_fit_class(tok.substr(1))) {
            throw fail(ErrorCode::MalformedText, "bad pitch suffix");
          }
          t.fitClass = std::string(tok.substr(1));
        }
        ++i;
      }
    }
  }
  if (t.fitClass.empty() && i < tokens.size() && tokens[i].size() > 1 &&
      tokens[i][0] == '-' && is_fit_class(std::string_view(tokens[i]).substr(1))) {
    t.fitClass = tokens[i].substr(1);
    ++i;
  }
  t.designation = std::string(*series) + major;
  if (!pitch.empty()) t.designation += std::string(kTimes) + pitch;

  if (i < tokens.size() && iequals(tokens[i], "TAP")) ++i;
  if (i < tokens.size()) {
    if (iequals(tokens[i], "THRU") || iequals(tokens[i], "THROUGH")) {
      t.depthQualifier = "THRU";
      ++i;
    } else if (iequals(tokens[i], "DEPTH") && i + 1 < tokens.size() &&
               is_decimal(tokens[i + 1])) {
      t.depthQualifier = tokens[i + 1];
      i += 2;
    } else if (is_decimal(tokens[i])) {
      t.depthQualifier = tokens[i];
      ++i;
      if (i < tokens.size() && iequals(tokens[i], "DEEP")) ++i;
    }
  }
  if (i != tokens.size()) {
    throw fail(ErrorCode::MalformedText, "unexpected '" + tokens[i] + "'");
  }
  return t;
}

// --- radii -----------------------------------------------------------------

bool is_radius_value(std::string_view text) noexcept {
  return text.size() > 1 && text[0] == 'R' && is_positive_decimal(text.substr(1));
}

std::string format_radius(const RadiusSpec& r) {
  if (r.quantity) return std::to_string(*r.quantity) + "X " + r.value;
  return r.value;
}

RadiusSpec radius_from_callout(std::string_view text) {
  const std::string original = normalize_space(text);
  auto tokens = split_tokens(original);
  RadiusSpec r;
  std::size_t i = 0;
  if (!tokens.empty()) {
    if (auto q = quantity_token(tokens[0])) {
      r.quantity = q;
      ++i;
    }
  }
  std::string rest;
  for (; i < tokens.size(); ++i) rest += tokens[i];
  if (!is_radius_value(rest)) {
    throw Error(ErrorCode::MalformedText,
                "expected R<positive decimal> in '" + original + "'");
  }
  r.value = rest;
  return r;
}

// --- surface roughness -----------------------------------------------------

bool is_roughness_value(RoughnessParameter p, std::string_view value) noexcept {
  if (p == RoughnessParameter::NGrade) {
    if (value.size() < 2 || value[0] != 'N') return false;
    auto n = parse_count(value.substr(1));
    return n && *n >= 1 && *n <= 12;
  }
  const std::string suffix = " " + std::string(kMicron);
  if (value.size() <= suffix.size() ||
      value.substr(value.size() - suffix.size()) != suffix) {
    return false;
  }
  return is_positive_decimal(value.substr(0, value.size() - suffix.size()));
}

std::string format_roughness(const SurfaceRoughnessSpec& s) {
  if (s.parameter == RoughnessParameter::NGrade) return s.value;
  return "Ra " + s.value;
}

SurfaceRoughnessSpec roughness_from_callout(std::string_view text) {
  const std::string original = normalize_space(text);
  std::string s = normalize_space(normalize_symbols(text));
  auto unknown = [&] {
    return Error(ErrorCode::UnknownRoughnessForm,
                 "unsupported roughness callout '" + original + "'");
  };
  if (starts_with(s, "Ra")) {
    std::string_view v = s;
    v.remove_prefix(2);
    while (!v.empty() && (v[0] == ' ' || v[0] == '=')) v.remove_prefix(1);
    const std::size_t n = decimal_prefix(v);
    if (n == 0) throw unknown();
    std::string number(v.substr(0, n));
    v.remove_prefix(n);
    while (!v.empty() && v[0] == ' ') v.remove_prefix(1);
    if (!v.empty() && v != kMicron && v != "um") throw unknown();
    if (!is_positive_decimal(number)) throw unknown();
    return {RoughnessParameter::Ra, number + " " + std::string(kMicron)};
  }
  if (s.size() >= 2 && s[0] == 'N') {
    auto g = parse_count(std::string_view(s).substr(1));
    if (g && *g >= 1 && *g <= 12) return {RoughnessParameter::NGrade, s};
  }
  throw unknown();
}

std::optional<double> roughness_ra_um(const SurfaceRoughnessSpec& s) noexcept {
  static constexpr std::array<double, 12> kGrades = {
      0.025, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.3, 12.5, 25.0, 50.0};
  if (s.parameter == RoughnessParameter::NGrade) {
    if (s.value.size() < 2) return std::nullopt;
    auto g = parse_count(std::string_view(s.value).substr(1));
    if (!g || *g < 1 || *g > 12) return std::nullopt;
    return kGrades[*g - 1];
  }
  std::string_view v = s.value;
  const std::size_t n = decimal_prefix(v);
  if (n == 0) return std::nullopt;
  return decimal_value(v.substr(0, n));
}

}  // namespace drawparse::notation
