// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "drawparse/eval.hpp"
#include "files.hpp"
#include "gen.hpp"

using namespace drawparse;           // NOLINT
using namespace drawparse::testing;  // NOLINT

namespace {

FieldSet fields(std::vector<std::pair<std::string, std::string>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  return FieldSet{std::move(pairs)};
}

void check_row(const MetricsRow& row, const MatchCounts& c) {
  const double tp = static_cast<double>(c.tp);
  const double p = c.tp + c.fp ? tp / static_cast<double>(c.tp + c.fp) : 0.0;
  const double r = c.tp + c.fn ? tp / static_cast<double>(c.tp + c.fn) : 0.0;
  CHECK(row.precision == doctest::Approx(p).epsilon(1e-12));
  CHECK(row.recall == doctest::Approx(r).epsilon(1e-12));
  CHECK(row.f1 == doctest::Approx(p + r > 0 ? 2 * p * r / (p + r) : 0.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("flatten examples") {
  const GdtFrames fig{{{1, 0x2316, "U+2300 0.014 (M)", {"A", "B", "C"}}}};
  const FieldSet f = flatten(fig);
  CHECK(f == fields({{"gdts.1.geometricCharacteristic", "U+2316"},
                     {"gdts.1.tolerance", "U+2300 0.014 (M)"},
                     {"gdts.1.datumReference", "A,B,C"}}));
  CHECK(flatten(Measure{}).empty());
  const Measure m{8, "U+2300 6.5", "", "+0.1", "-0.1", "", ""};
  const FieldSet mf = flatten(m);
  CHECK(mf.size() == 4);
  REQUIRE(mf.find("measures.1.quantity") != nullptr);
  CHECK(*mf.find("measures.1.quantity") == "8");
  CHECK(*mf.find("measures.1.lowerLimit") == "-0.1");
  CHECK(mf.find("measures.1.tolerance") == nullptr);

  const TitleBlock tb{{{"Designer", "Shubham"}, {"Date", " 09.06.2020 "}}};
  const FieldSet tf = flatten(tb);
  CHECK(*tf.find("titleBlock.Date") == "09.06.2020");
  const NotesBlock notes{{"a", "b"}};
  CHECK(*flatten(notes).find("notes.lines.2") == "b");
  CHECK(normalize_field_value("  DRILL THROUGH ") == "DRILL THRU");
  CHECK(normalize_field_value("THROUGHOUT") == "THROUGHOUT");
}

TEST_CASE("flattened sets are sorted, unique and non-empty") {
  Gen g(41);
  for (int i = 0; i < 200; ++i) {
    const DrawingDocument doc = gen_document(g);
    std::size_t total = 0;
    for (const auto& fs : flatten_document(doc)) {
      CHECK(std::is_sorted(fs.pairs.begin(), fs.pairs.end()));
      for (std::size_t k = 1; k < fs.pairs.size(); ++k) CHECK(fs.pairs[k - 1].first != fs.pairs[k].first);
      for (const auto& [p, v] : fs.pairs) CHECK_FALSE(v.empty());
      total += fs.size();
    }
    (void)total;
  }
}

TEST_CASE("compare counts") {
  const FieldSet gt = fields({{"a", "1"}, {"b", "2"}, {"c", "3"}, {"d", "4"}});
  CHECK(compare(gt, gt) == MatchCounts{4, 0, 0});
  const FieldSet missing = fields({{"a", "1"}, {"b", "2"}, {"c", "3"}});
  CHECK(compare(missing, gt) == MatchCounts{3, 0, 1});
  const FieldSet wrong = fields({{"a", "1"}, {"b", "2"}, {"c", "3"}, {"d", "5"}});
  CHECK(compare(wrong, gt) == MatchCounts{3, 1, 1});
  CHECK(compare(FieldSet{}, FieldSet{}) == MatchCounts{});
  const FieldSet through = fields({{"x", "TAP THROUGH"}});
  CHECK(compare(through, fields({{"x", "TAP THRU"}})).tp == 1);
}

TEST_CASE("compare is symmetric in fp and fn") {
  Gen g(43);
  for (int i = 0; i < 300; ++i) {
    const auto a = flatten_document(gen_document(g));
    const auto b = flatten_document(gen_document(g));
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      const auto ab = compare(a[c], b[c]);
      const auto ba = compare(b[c], a[c]);
      CHECK(ab.tp == ba.tp);
      CHECK(ab.fp == ba.fn);
      CHECK(ab.fn == ba.fp);
      CHECK(ab.tp + ab.fp == a[c].size());
      CHECK(ab.tp + ab.fn == b[c].size());
    }
  }
}

TEST_CASE("metrics rows") {
  MetricsRow r = metrics({3, 1, 0});
  CHECK(r.precision == 0.75);
  CHECK(r.recall == 1.0);
  CHECK(r.f1 == doctest::Approx(0.857142857));
  CHECK(r.hallucination == 0.25);
  CHECK_FALSE(r.degenerate);
  r = metrics({});
  CHECK(r == MetricsRow{0, 0, 0, 0, true});
  r = metrics({0, 0, 5});
  CHECK(r.precision == 0);
  CHECK(r.hallucination == 1.0);
  // Harmonic mean of a published row.
  const double p = 0.933, rc = 1.0;
  CHECK(2 * p * rc / (p + rc) == doctest::Approx(0.965).epsilon(0.005));
}

TEST_CASE("micro aggregation") {
  const std::vector<std::pair<Category, MatchCounts>> one = {{Category::GDT, {2, 1, 1}}};
  auto rep = aggregate_report(one);
  CHECK(rep.at(Category::GDT).row == metrics({2, 1, 1}));
  CHECK(rep.at(Category::Thread).row.degenerate);

  const std::vector<std::pair<Category, MatchCounts>> two = {{Category::GDT, {1, 1, 0}},
                                                             {Category::Measure, {3, 0, 1}}};
  rep = aggregate_report(two);
  CHECK(rep.overall.counts == MatchCounts{4, 1, 1});
  CHECK(rep.overall.row.precision == doctest::Approx(0.8));
  CHECK(rep.overall.row.recall == doctest::Approx(0.8));
  CHECK(rep.overall.row.f1 == doctest::Approx(0.8));
  CHECK(rep.overall.row.hallucination == doctest::Approx(0.2));

  Gen g(47);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::pair<Category, MatchCounts>> patches;
    const int n = g.between(0, 30);
    for (int k = 0; k < n; ++k) {
      patches.push_back({kAllCategories[static_cast<std::size_t>(g.between(0, 8))],
                         {static_cast<std::size_t>(g.between(0, 9)), static_cast<std::size_t>(g.between(0, 9)),
                          static_cast<std::size_t>(g.between(0, 9))}});
    }
    const auto r = aggregate_report(patches);
    MatchCounts sum;
    for (const auto& s : r.perCategory) {
      sum += s.counts;
      CHECK(s.row == metrics(s.counts));
    }
    CHECK(r.overall.counts == sum);
    CHECK(r.overall.row == metrics(sum));
    check_row(r.overall.row, sum);
  }
}

TEST_CASE("document identity scores perfectly") {
  const DrawingDocument doc = parse_document(slurp(fixture("golden/shaft_document.json")));
  const auto rep = aggregate_report(compare_documents(doc, doc));
  CHECK(rep.overall.row.precision == 1.0);
  CHECK(rep.overall.row.recall == 1.0);
  CHECK(rep.overall.row.f1 == 1.0);
  CHECK(rep.overall.row.hallucination == 0.0);
  CHECK(rep.at(Category::Radius).row.degenerate);

  const std::string csv = report_csv(rep);
  CHECK(csv.rfind("Category,Precision,Recall,F1,Hallucination,TP,FP,FN,Degenerate\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
  const auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j.at("categories").size() == 9);
  CHECK(j.at("overall").at("f1") == 1.0);
}
