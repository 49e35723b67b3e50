// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Field-level scoring of parsed records against ground truth: flattening to
// key-value pairs, exact-match counting, and per-category reports.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drawparse/schema.hpp"

namespace drawparse {

/// Flattened (path, value) pairs, sorted by path; paths are unique and no
/// value is empty.
struct FieldSet {
  std::vector<std::pair<std::string, std::string>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  /// nullptr when the path is absent.
  const std::string* find(std::string_view path) const noexcept;
  bool operator==(const FieldSet&) const = default;
};

/// Paths look like gdts.1.tolerance, measures.1.nominalValue,
/// material.designation, notes.lines.2, titleBlock.Designer. GD&T frames use
/// their declared index, other list items their 1-based position.
FieldSet flatten(const AnnotationRecord& record);
/// One set per category, indexed by ordinal.
std::array<FieldSet, kCategoryCount> flatten_document(const DrawingDocument& doc);

/// Trimmed, with the word THROUGH spelled THRU.
std::string normalize_field_value(std::string_view value);

struct MatchCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  MatchCounts& operator+=(const MatchCounts& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const MatchCounts&) const = default;
};

/// Exact match on path and normalized value. A wrong value at a shared path
/// counts once as fp and once as fn.
MatchCounts compare(const FieldSet& pred, const FieldSet& gt);

struct MetricsRow {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double hallucination = 0;
  /// All counts zero; every value is reported as 0.
  bool degenerate = false;
  bool operator==(const MetricsRow&) const = default;
};

/// Zero denominators give 0. hallucination is 1 - precision except on the
/// degenerate all-zero row.
MetricsRow metrics(const MatchCounts& counts);

struct CategoryScore {
  MatchCounts counts;
  MetricsRow row;
};

struct MetricsReport {
  std::array<CategoryScore, kCategoryCount> perCategory;  // by ordinal
  CategoryScore overall;

  const CategoryScore& at(Category c) const noexcept {
    return perCategory[static_cast<std::size_t>(ordinal(c))];
  }
};

/// Sums counts per category; the overall row comes from the grand total.
MetricsReport aggregate_report(std::span<const std::pair<Category, MatchCounts>> perPatch);

/// Per-category counts for two whole documents.
std::vector<std::pair<Category, MatchCounts>> compare_documents(const DrawingDocument& pred,
                                                                const DrawingDocument& gt);

/// Category,Precision,Recall,F1,Hallucination,TP,FP,FN,Degenerate; nine rows
/// in ordinal order, then Overall.
std::string report_csv(const MetricsReport& report);
std::string report_json(const MetricsReport& report);

}  // namespace drawparse
