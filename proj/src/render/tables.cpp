// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

#include "drawparse/render.hpp"

namespace drawparse {
namespace {

using Table = std::vector<std::vector<std::string>>;

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string html_table(std::string_view title, const std::vector<std::string>& header,
                       const Table& rows) {
  std::string out = "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
                    xml_escape(title) + "</title>\n</head>\n<body>\n<table>\n<thead>\n<tr>";
  for (const auto& h : header) out += "<th>" + xml_escape(h) + "</th>";
  out += "</tr>\n</thead>\n<tbody>\n";
  for (const auto& row : rows) {
    out += "<tr>";
    for (const auto& cell : row) out += "<td>" + xml_escape(cell) + "</td>";
    out += "</tr>\n";
  }
  out += "</tbody>\n</table>\n</body>\n</html>\n";
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_table(const std::vector<std::string>& header, const Table& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
    out += "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

const std::vector<std::string>& report_header() {
  static const std::vector<std::string> h = {"Category", "Precision", "Recall", "F1 score",
                                             "Hallucination", "TP", "FP", "FN"};
  return h;
}

std::vector<std::string> report_row(std::string_view label, const CategoryScore& s) {
  return {std::string(label),           fixed3(s.row.precision), fixed3(s.row.recall),
          fixed3(s.row.f1),             fixed3(s.row.hallucination),
          std::to_string(s.counts.tp),  std::to_string(s.counts.fp),
          std::to_string(s.counts.fn)};
}

Table report_rows(const MetricsReport& report) {
  Table rows;
  for (Category c : kAllCategories) {
    if (report.at(c).row.degenerate) continue;
    rows.push_back(report_row(category_display_name(c), report.at(c)));
  }
  if (!rows.empty()) rows.push_back(report_row("Overall", report.overall));
  return rows;
}

const std::vector<std::string>& summary_header() {
  static const std::vector<std::string> h = {"Class", "Count", "Avg. Confidence"};
  return h;
}

Table summary_rows(std::span<const DetectionSummaryRow> rows) {
  Table out;
  for (const auto& r : rows) {
    out.push_back({std::string(category_display_name(r.category)), std::to_string(r.count),
                   format_percent(r.meanConfidence)});
  }
  return out;
}

const std::vector<std::string>& recommendation_header() {
  static const std::vector<std::string> h = {"Feature", "Rules", "Operations", "Tools",
                                             "Parameters"};
  return h;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? std::string(sep) : "") + items[i];
  return out;
}

Table recommendation_rows(std::span<const Recommendation> recs) {
  Table out;
  for (const auto& r : recs) {
    std::vector<std::string> tools;
    for (const auto& t : r.tools) {
      tools.push_back(t.name + (t.tool ? " [" + t.tool->toolId + "]" : " [unresolved]"));
    }
    std::vector<std::string> params;
    for (const auto& p : r.parameters) {
      params.push_back(p.toolId + ": " + p.speedText + " m/min, " + p.feedText + " mm/rev");
    }
    out.push_back({std::string(feature_type_name(r.feature.featureType)) + " (" + r.feature.source + ")",
                   join(r.matchedRuleIds, "; "), join(r.operations, ", "), join(tools, "; "),
                   join(params, "; ")});
  }
  return out;
}

}  // namespace

std::vector<DetectionSummaryRow> summarize_detections(std::span<const Detection> detections) {
  std::array<std::size_t, kCategoryCount> counts{};
  std::array<double, kCategoryCount> sums{};
  for (const auto& d : detections) {
    const auto i = static_cast<std::size_t>(ordinal(d.category));
    ++counts[i];
    sums[i] += d.confidence;
  }
  std::vector<DetectionSummaryRow> rows;
  for (Category c : kAllCategories) {
    const auto i = static_cast<std::size_t>(ordinal(c));
    if (counts[i]) rows.push_back({c, counts[i], sums[i] / static_cast<double>(counts[i])});
  }
  return rows;
}

std::string render_report_html(const MetricsReport& report) {
  return html_table("Parsing metrics", report_header(), report_rows(report));
}

std::string render_report_csv(const MetricsReport& report) {
  return csv_table(report_header(), report_rows(report));
}

std::string render_detection_summary_html(std::span<const DetectionSummaryRow> rows) {
  return html_table("Detections", summary_header(), summary_rows(rows));
}

std::string render_detection_summary_csv(std::span<const DetectionSummaryRow> rows) {
  return csv_table(summary_header(), summary_rows(rows));
}

std::string render_recommendations_html(std::span<const Recommendation> recs) {
  return html_table("Recommendations", recommendation_header(), recommendation_rows(recs));
}

std::string render_recommendations_csv(std::span<const Recommendation> recs) {
  return csv_table(recommendation_header(), recommendation_rows(recs));
}

}  // namespace drawparse
