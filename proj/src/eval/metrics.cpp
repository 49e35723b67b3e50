// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>

#include <json.hpp>

#include "drawparse/eval.hpp"

namespace drawparse {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

CategoryScore score(const MatchCounts& c) { return {c, metrics(c)}; }

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_row(std::string& out, std::string_view label, const CategoryScore& s) {
  out += csv_field(label);
  for (double v : {s.row.precision, s.row.recall, s.row.f1, s.row.hallucination}) {
    out += "," + fixed6(v);
  }
  out += "," + std::to_string(s.counts.tp) + "," + std::to_string(s.counts.fp) + "," +
         std::to_string(s.counts.fn) + "," + (s.row.degenerate ? "true" : "false") + "\n";
}

nlohmann::ordered_json json_row(std::string_view label, const CategoryScore& s) {
  return {{"category", std::string(label)},
          {"precision", s.row.precision},
          {"recall", s.row.recall},
          {"f1", s.row.f1},
          {"hallucination", s.row.hallucination},
          {"tp", s.counts.tp},
          {"fp", s.counts.fp},
          {"fn", s.counts.fn},
          {"degenerate", s.row.degenerate}};
}

}  // namespace

MetricsRow metrics(const MatchCounts& c) {
  MetricsRow r;
  if (c.tp == 0 && c.fp == 0 && c.fn == 0) {
    r.degenerate = true;
    return r;
  }
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  const double sum = r.precision + r.recall;
  r.f1 = sum == 0 ? 0.0 : 2 * r.precision * r.recall / sum;
  r.hallucination = 1.0 - r.precision;
  return r;
}

MetricsReport aggregate_report(std::span<const std::pair<Category, MatchCounts>> perPatch) {
  std::array<MatchCounts, kCategoryCount> sums{};
  for (const auto& [c, counts] : perPatch) sums[static_cast<std::size_t>(ordinal(c))] += counts;
  MetricsReport report;
  MatchCounts total;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    report.perCategory[i] = score(sums[i]);
    total += sums[i];
  }
  report.overall = score(total);
  return report;
}

std::vector<std::pair<Category, MatchCounts>> compare_documents(const DrawingDocument& pred,
                                                                const DrawingDocument& gt) {
  const auto p = flatten_document(pred);
  const auto g = flatten_document(gt);
  std::vector<std::pair<Category, MatchCounts>> out;
  for (Category c : kAllCategories) {
    const auto i = static_cast<std::size_t>(ordinal(c));
    out.emplace_back(c, compare(p[i], g[i]));
  }
  return out;
}

std::string report_csv(const MetricsReport& report) {
  std::string out = "Category,Precision,Recall,F1,Hallucination,TP,FP,FN,Degenerate\n";
  for (Category c : kAllCategories) csv_row(out, category_display_name(c), report.at(c));
  csv_row(out, "Overall", report.overall);
  return out;
}

std::string report_json(const MetricsReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Category c : kAllCategories) rows.push_back(json_row(category_display_name(c), report.at(c)));
  nlohmann::ordered_json j{{"categories", rows}, {"overall", json_row("Overall", report.overall)}};
  return j.dump(2) + "\n";
}

}  // namespace drawparse
