// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "drawparse/render.hpp"

namespace drawparse {
namespace {

using Json = nlohmann::json;

std::string num(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Decimal half-up; the epsilon absorbs binary representation error such
/// as 0.945 being stored as 0.94499999...
long long half_up(double v, double scale) {
  return static_cast<long long>(std::floor(v * scale + 0.5 + 1e-9));
}

std::string fixed2(long long hundredths) {
  char buf[32];
  const char* sign = hundredths < 0 ? "-" : "";
  const long long a = std::llabs(hundredths);
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", sign, a / 100, a % 100);
  return buf;
}

std::optional<Rgb> parse_hex(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return std::nullopt;
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data() + 1, s.data() + 7, v, 16);
  if (ec != std::errc() || p != s.data() + 7) return std::nullopt;
  return Rgb{static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
             static_cast<std::uint8_t>(v)};
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t p = 0; (p = s.find(from, p)) != std::string::npos; p += to.size()) {
    s.replace(p, from.size(), to);
  }
}

}  // namespace

std::string rgb_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

OverlayStyle default_overlay_style() {
  OverlayStyle s;
  s.colors = {{
      {0xe6, 0x19, 0x4b},  // GD&Ts
      {0x3c, 0xb4, 0x4b},  // General Tolerance
      {0x43, 0x63, 0xd8},  // Measures
      {0xf5, 0x82, 0x31},  // Material
      {0x91, 0x1e, 0xb4},  // Notes
      {0x42, 0xd4, 0xf4},  // Radii
      {0xf0, 0x32, 0xe6},  // Surface Roughness
      {0x80, 0x80, 0x00},  // Threads
      {0x9a, 0x63, 0x24},  // Title Block
  }};
  return s;
}

OverlayStyle parse_overlay_style(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, "style must be an object");
  OverlayStyle s = default_overlay_style();
  for (const auto& [key, v] : j.items()) {
    if (key == "colors") {
      if (!v.is_object()) throw Error(ErrorCode::SchemaViolation, "must be an object", "colors");
      for (const auto& [name, hex] : v.items()) {
        const auto c = parse_category(name);
        if (!c) throw Error(ErrorCode::SchemaViolation, "unknown category", "colors." + name);
        const auto rgb = hex.is_string() ? parse_hex(hex.get<std::string>()) : std::nullopt;
        if (!rgb) throw Error(ErrorCode::SchemaViolation, "expected #rrggbb", "colors." + name);
        s.colors[static_cast<std::size_t>(ordinal(*c))] = *rgb;
      }
    } else if (key == "strokeWidth" || key == "fontSize") {
      if (!v.is_number() || !(v.get<double>() > 0)) {
        throw Error(ErrorCode::SchemaViolation, "must be a positive number", key);
      }
      (key == "strokeWidth" ? s.strokeWidth : s.fontSize) = v.get<double>();
    } else if (key == "labelFormat") {
      if (!v.is_string()) throw Error(ErrorCode::SchemaViolation, "must be a string", key);
      s.labelFormat = v.get<std::string>();
    } else if (key == "legend") {
      if (!v.is_boolean()) throw Error(ErrorCode::SchemaViolation, "must be a boolean", key);
      s.legend = v.get<bool>();
    } else if (key != "description") {
      throw Error(ErrorCode::SchemaViolation, "unknown style key", key);
    }
  }
  std::set<std::string> distinct;
  for (const auto& c : s.colors) distinct.insert(rgb_hex(c));
  if (distinct.size() != kCategoryCount) {
    throw Error(ErrorCode::SchemaViolation, "category colors must be mutually distinct", "colors");
  }
  return s;
}

OverlayStyle load_overlay_style(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_overlay_style(ss.str());
}

std::string format_confidence(double confidence) { return fixed2(half_up(confidence, 100)); }

std::string format_percent(double fraction) { return fixed2(half_up(fraction, 10000)) + "%"; }

std::string overlay_label(const Detection& d, const OverlayStyle& style) {
  std::string s = style.labelFormat;
  replace_all(s, "{category}", category_display_name(d.category));
  replace_all(s, "{confidence}", format_confidence(d.confidence));
  return s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_overlay(std::span<const Detection> detections, int imageWidth,
                           int imageHeight, const OverlayStyle& style,
                           std::string_view imageHref) {
  const std::string w = std::to_string(imageWidth);
  const std::string h = std::to_string(imageHeight);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
         "version=\"1.1\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h +
         "\">\n";
  if (!imageHref.empty()) {
    out += "  <image x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" xlink:href=\"" +
           xml_escape(imageHref) + "\"/>\n";
  }
  if (!detections.empty()) {
    out += "  <g class=\"detections\" fill=\"none\" stroke-width=\"" + num(style.strokeWidth) +
           "\" font-family=\"sans-serif\" font-size=\"" + num(style.fontSize) + "\">\n";
    for (std::size_t i = 0; i < detections.size(); ++i) {
      const Detection& d = detections[i];
      const std::string color = rgb_hex(style.colors[static_cast<std::size_t>(ordinal(d.category))]);
      const auto corners = box_corners(d.box);
      std::string path = "M";
      for (std::size_t k = 0; k < 4; ++k) {
        path += (k ? " L" : "") + std::string(" ") + num(corners[k].x) + " " + num(corners[k].y);
      }
      path += " Z";
      // Label sits above the top-most corner.
      const Point anchor = *std::min_element(corners.begin(), corners.end(), [](Point a, Point b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
      out += "    <g class=\"detection\" data-index=\"" + std::to_string(i) +
             "\" data-category=\"" + std::string(category_name(d.category)) + "\">\n";
      out += "      <path d=\"" + path + "\" stroke=\"" + color + "\"/>\n";
      out += "      <text x=\"" + num(anchor.x) + "\" y=\"" + num(anchor.y - 3) + "\" fill=\"" +
             color + "\" stroke=\"none\">" + xml_escape(overlay_label(d, style)) + "</text>\n";
      out += "    </g>\n";
    }
    out += "  </g>\n";
    if (style.legend) {
      std::array<bool, kCategoryCount> present{};
      for (const auto& d : detections) present[static_cast<std::size_t>(ordinal(d.category))] = true;
      out += "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"" + num(style.fontSize) +
             "\">\n";
      double y = 8;
      const double step = style.fontSize + 6;
      for (Category c : kAllCategories) {
        const auto idx = static_cast<std::size_t>(ordinal(c));
        if (!present[idx]) continue;
        const std::string color = rgb_hex(style.colors[idx]);
        out += "    <rect x=\"8\" y=\"" + num(y) + "\" width=\"" + num(style.fontSize) +
               "\" height=\"" + num(style.fontSize) + "\" fill=\"" + color + "\"/>\n";
        out += "    <text x=\"" + num(14 + style.fontSize) + "\" y=\"" + num(y + style.fontSize - 1) +
               "\" fill=\"#000000\">" + xml_escape(category_display_name(c)) + "</text>\n";
        y += step;
      }
      out += "  </g>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace drawparse
