// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion; exits non-zero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "drawparse/cli.hpp"
#include "drawparse/dataset.hpp"
#include "drawparse/decide.hpp"
#include "drawparse/eval.hpp"
#include "drawparse/geometry.hpp"
#include "drawparse/parser.hpp"
#include "drawparse/schema.hpp"
#include "files.hpp"
#include "gen.hpp"

using namespace drawparse;           // NOLINT
using namespace drawparse::testing;  // NOLINT
using Clock = std::chrono::steady_clock;

namespace {

/// Collects failed checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ - failed_ << "/" << count_ << " checks";
    for (const auto& f : failures_) s << "; " << f;
    return s.str();
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: callers never expect it
}

// ---------------------------------------------------------------------------

void symbol_table(Checks& c) {
  const std::pair<const char*, char32_t> expected[] = {
      {"Position", 0x2316},        {"Flatness", 0x23E5},          {"Roundness", 0x25CB},
      {"Cylindricity", 0x232D},    {"Profile of a line", 0x2312}, {"Profile of a plane", 0x2313},
      {"Parallelism", 0x2225},     {"Perpendicularity", 0x27C2},  {"Straightness", 0x23E4},
      {"Concentricity", 0x25CE},   {"Angularity", 0x2220},        {"Symmetry", 0x232F},
      {"Circular runout", 0x2197}, {"Total runout", 0x2330}};
  const auto table = gdt_symbol_table();
  c.expect(table.size() == 14, "table size");
  for (std::size_t i = 0; i < std::min<std::size_t>(14, table.size()); ++i) {
    c.expect(table[i].name == expected[i].first && table[i].codepoint == expected[i].second,
             std::string("row ") + expected[i].first);
  }
  for (const auto& [name, cp] : expected) {
    c.expect(lookup_gdt_symbol(name) == cp, std::string("lookup ") + name);
    c.expect(gdt_symbol_name(cp) == name, std::string("name of ") + name);
    c.expect(parse_codepoint_escape(format_codepoint_escape(cp)) == cp, "escape round-trip");
    c.expect(utf8_single_scalar(utf8_encode(cp)) == cp, "utf-8 round-trip");
  }
}

void published_scores(Checks& c) {
  const auto j = nlohmann::json::parse(slurp(fixture("published_scores.json")));
  const auto& rows = j.at("rows");
  c.expect(rows.size() == 20, "row count");
  for (const auto& r : rows) {
    const double p = r.at("precision"), rc = r.at("recall");
    const double f1 = p + rc > 0 ? 2 * p * rc / (p + rc) : 0.0;
    const std::string tag = r.at("model").get<std::string>() + "/" + r.at("category").get<std::string>();
    c.expect(std::abs(f1 - r.at("f1").get<double>()) <= 0.005, tag + " F1");
    c.expect(std::abs((1 - p) - r.at("hallucination").get<double>()) <= 0.001, tag + " H");
  }
  // The library produces the same harmonic mean from counts.
  const MetricsRow m = metrics({885, 115, 7});
  c.expect(std::abs(m.hallucination - (1 - m.precision)) < 1e-12, "library H = 1 - P");
}

void eval_identity(Checks& c) {
  Gen g(3);
  DrawingDocument doc;
  for (Category cat : kAllCategories) {
    for (int k = 0; k < 2; ++k) add_record(doc, gen_record(cat, g));
  }
  const auto rep = aggregate_report(compare_documents(doc, doc));
  for (Category cat : kAllCategories) {
    const CategoryScore& s = rep.at(cat);
    const std::string n(category_name(cat));
    c.expect(s.counts.tp > 0, n + " has fields");
    c.expect(s.row.precision == 1.0 && s.row.recall == 1.0 && s.row.f1 == 1.0, n + " P/R/F1");
    c.expect(s.row.hallucination == 0.0, n + " H");
  }
  c.expect(rep.overall.row.precision == 1.0 && rep.overall.row.recall == 1.0 && rep.overall.row.f1 == 1.0 &&
               rep.overall.row.hallucination == 0.0,
           "overall");
}

void micro_aggregation(Checks& c) {
  Gen g(4);
  for (int i = 0; i < 1000; ++i) {
    const DrawingDocument gt = gen_document(g);
    DrawingDocument pred = g.coin() ? gt : gen_document(g);
    if (g.coin()) add_record(pred, gen_record(kAllCategories[static_cast<std::size_t>(g.between(0, 8))], g));
    const auto per = compare_documents(pred, gt);
    const auto rep = aggregate_report(per);
    MatchCounts sum, summed;
    for (const auto& [cat, counts] : per) sum += counts;
    for (const auto& s : rep.perCategory) summed += s.counts;
    c.expect(rep.overall.counts == sum && summed == sum, "overall counts");
    const double tp = static_cast<double>(sum.tp);
    const double p = sum.tp + sum.fp ? tp / static_cast<double>(sum.tp + sum.fp) : 0;
    const double r = sum.tp + sum.fn ? tp / static_cast<double>(sum.tp + sum.fn) : 0;
    const double f = p + r > 0 ? 2 * p * r / (p + r) : 0;
    c.expect(std::abs(rep.overall.row.precision - p) < 1e-12 && std::abs(rep.overall.row.recall - r) < 1e-12 &&
                 std::abs(rep.overall.row.f1 - f) < 1e-12,
             "overall metrics");
  }
}

void parser_round_trip(Checks& c) {
  Gen g(5);
  for (Category cat : kAllCategories) {
    std::size_t failures = 0;
    for (int i = 0; i < 1000; ++i) {
      const AnnotationRecord rec = gen_record(cat, g);
      try {
        if (!(parse_annotation(cat, render_annotation(rec)) == rec)) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
    c.expect(failures == 0, std::string(category_name(cat)) + " failures " + std::to_string(failures));
  }
}

void golden_fixtures(Checks& c) {
  for (const char* name : {"gdt_patch_label.json", "measure_patch_label.json"}) {
    const std::string text = slurp(fixture(std::string("golden/") + name));
    c.expect(!text.empty() && serialize_patch_label(parse_patch_label(text)) == text, name);
  }
  for (const char* name :
       {"shaft_document.json", "bracket_document.json", "flange_document.json", "spanner_document.json"}) {
    const std::string text = slurp(fixture(std::string("golden/") + name));
    c.expect(!text.empty() && serialize_document(parse_document(text), SchemaDialect::Document) == text, name);
  }
}

// Axis projections only; shares nothing with the polygon clipper.
bool inside(const OrientedBox& b, double ct, double st, double x, double y) {
  const double dx = x - b.cx, dy = y - b.cy;
  return std::abs(dx * ct + dy * st) <= b.w / 2 && std::abs(-dx * st + dy * ct) <= b.h / 2;
}

// Jittered-grid sampling of the joint bounding rectangle, side^2 samples.
double sampled_iou(const OrientedBox& a, const OrientedBox& b, int side, std::mt19937_64& rng) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& box : {a, b}) {
    for (const auto& p : box_corners(box)) {
      x0 = std::min(x0, p.x), y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
    }
  }
  const double ca = std::cos(a.theta), sa = std::sin(a.theta);
  const double cb = std::cos(b.theta), sb = std::sin(b.theta);
  const double dx = (x1 - x0) / side, dy = (y1 - y0) / side;
  std::uniform_real_distribution<double> u(0, 1);
  long long inter = 0, uni = 0;
  for (int i = 0; i < side; ++i) {
    for (int k = 0; k < side; ++k) {
      const double x = x0 + (i + u(rng)) * dx, y = y0 + (k + u(rng)) * dy;
      const bool ia = inside(a, ca, sa, x, y), ib = inside(b, cb, sb, x, y);
      inter += ia && ib;
      uni += ia || ib;
    }
  }
  return uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

void rotated_iou_oracle(Checks& c) {
  c.expect(std::abs(rotated_iou(make_box(0.5, 0.5, 1, 1, 0), make_box(1.0, 0.5, 1, 1, 0)) - 1.0 / 3) < 1e-12,
           "offset squares");
  c.expect(std::abs(rotated_iou(make_box(0, 0, 2, 2, 0), make_box(1, 1, 2, 2, 0)) - 1.0 / 7) < 1e-12,
           "diagonal squares");
  c.expect(rotated_iou(make_box(0, 0, 1, 1, 0), make_box(5, 5, 1, 1, 0)) == 0.0, "disjoint");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> side(1, 10), off(-4, 4), ang(-3.14159, 3.14159);
  for (int i = 0; i < 100; ++i) {
    const OrientedBox a = make_box(0, 0, side(rng), side(rng), ang(rng));
    const OrientedBox b = make_box(off(rng), off(rng), side(rng), side(rng), ang(rng));
    const double exact = rotated_iou(a, b);
    const double sampled = sampled_iou(a, b, 1000, rng);
    c.expect(std::abs(exact - sampled) <= 1e-3,
             "pair " + std::to_string(i) + " " + std::to_string(exact) + " vs " + std::to_string(sampled));
  }
}

Detection det(Category cat, double conf, double cx, double cy) { return {cat, conf, make_box(cx, cy, 10, 10, 0)}; }

void detection_metrics(Checks& c) {
  Gen g(8);
  std::vector<ScoredImage> perfect;
  for (int i = 0; i < 20; ++i) {
    ScoredImage img;
    for (int k = 0; k < 9; ++k) img.gts.push_back(det(kAllCategories[static_cast<std::size_t>(k)], 1, 30.0 * k, 0));
    for (auto d : img.gts) {
      d.confidence = g.real(0.1, 1);
      img.preds.push_back(d);
    }
    perfect.push_back(img);
  }
  for (Category cat : kAllCategories) {
    c.expect(average_precision(perfect, cat, 0.5) == 1.0, std::string("AP ") + std::string(category_name(cat)));
  }
  c.expect(mean_average_precision(perfect, 0.5) == 1.0, "mAP@0.5");
  std::vector<ScoredImage> empty = perfect;
  for (auto& img : empty) img.preds.clear();
  c.expect(mean_average_precision(empty, 0.5) == 0.0, "empty detector");

  // Ranked TP, FP, TP over two ground truths: precision 1 to recall 0.5,
  // then 2/3 to recall 1 on the 101-point grid.
  const std::vector<Detection> gts = {det(Category::GDT, 1, 0, 0), det(Category::GDT, 1, 50, 0)};
  const std::vector<Detection> ranked = {det(Category::GDT, 0.9, 0, 0), det(Category::GDT, 0.8, 200, 0),
                                         det(Category::GDT, 0.7, 50, 0)};
  const double hand = (51 + 50 * 2.0 / 3.0) / 101;
  c.expect(std::abs(average_precision(ranked, gts, Category::GDT, 0.5) - hand) <= 1e-9, "hand-built AP");

  for (int i = 0; i < 500; ++i) {
    std::vector<Detection> preds, truth;
    const int np = g.between(0, 10), ng = g.between(0, 10);
    auto cat = [&] { return kAllCategories[static_cast<std::size_t>(g.between(0, 8))]; };
    for (int k = 0; k < ng; ++k) truth.push_back({cat(), 1, g.box(30)});
    for (int k = 0; k < np; ++k) preds.push_back({cat(), g.real(0, 1), g.box(30)});
    const auto m = match_detections(preds, truth, 0.3);
    const auto cm = confusion_matrix(m, preds, truth);
    c.expect(m.pairs.size() + m.unmatchedPred.size() == preds.size(), "preds accounted");
    c.expect(m.pairs.size() + m.unmatchedGt.size() == truth.size(), "truth accounted");
    c.expect(cm.total() == static_cast<long long>(m.pairs.size() + m.unmatchedPred.size() + m.unmatchedGt.size()),
             "confusion total");
  }
}

void augmentation(Checks& c) {
  Gen g(9);
  const auto pipe = default_pipeline();
  for (int i = 0; i < 100; ++i) {
    const RasterPatch p = g.raster(24);
    RasterPatch r = p;
    for (int k = 0; k < 4; ++k) r = rotate_quarter_turns(r, 1);
    c.expect(r == p, "rot90^4");
    c.expect(rotate_quarter_turns(rotate_quarter_turns(p, 2), 2) == p, "rot180^2");
    c.expect(invert(invert(p)) == p, "inversion^2");
    c.expect(grayscale(grayscale(p)) == grayscale(p), "grayscale idempotent");
    const std::uint64_t seed = static_cast<std::uint64_t>(g.between(0, 1 << 30));
    c.expect(augment(p, pipe, seed) == augment(p, pipe, seed), "pipeline determinism");
  }
}

void dataset_stats(Checks& c) {
  Gen g(10);
  std::array<long long, kCategoryCount> expect{};
  std::vector<LabeledDrawing> corpus;
  const int drawings = 50;
  for (int d = 0; d < drawings; ++d) {
    std::vector<Detection> dets;
    const int n = g.between(0, 25);
    for (int k = 0; k < n; ++k) {
      const Category cat = kAllCategories[static_cast<std::size_t>(g.between(0, 8))];
      ++expect[static_cast<std::size_t>(ordinal(cat))];
      OrientedBox b = g.box(60);
      b.cx += 200, b.cy += 200;
      dets.push_back({cat, 1, b});
    }
    // Through the label text format, as the stats command reads it.
    LabeledDrawing drawing;
    drawing.imageW = 400, drawing.imageH = 400;
    drawing.detections = read_obb_labels(write_obb_labels(dets, 400, 400), 400, 400);
    corpus.push_back(drawing);
  }
  const DatasetStats s = category_histogram(corpus);
  long long total = 0;
  for (auto v : expect) total += v;
  c.expect(s.perCategoryCount == expect, "per-category counts");
  c.expect(s.totalAnnotations == total, "total");
  c.expect(s.drawingsCount == drawings, "drawings");
  c.expect(std::abs(s.meanPatchesPerDrawing - static_cast<double>(total) / drawings) < 1e-12, "mean");

  const auto j = nlohmann::json::parse(slurp(data_file("dataset/corpus_metadata.json")));
  c.expect(j.at("drawings") == 1367, "metadata drawings");
  c.expect(j.at("annotations") == 11469, "metadata annotations");
  c.expect(std::abs(j.at("meanPatchesPerDrawing").get<double>() - 8.4) < 1e-9, "metadata mean");
  // The documented mean is given to one decimal.
  c.expect(std::abs(11469.0 / 1367.0 - 8.4) <= 0.05, "metadata mean consistent");
}

void worked_recommendations(Checks& c) {
  const fs::path out = scratch("acceptance_recommend");
  cli::RunConfig cfg;
  cfg.out = out;
  cli::RecommendArgs args;
  args.document = fixture("golden/shaft_document.json");
  std::ostringstream log;
  c.expect(cli::cmd_recommend(args, cfg, log) == cli::kExitOk, "exit code: " + log.str());
  const std::string csv = slurp(out / "recommendations.csv");
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  c.expect(lines.size() >= 3, "row count");
  if (lines.size() < 3) return;
  c.expect(lines[1] ==
               "ThreadedHole (threads.1),threaded-hole-m5,\"Drill Ø4.2 mm, Tap M5×0.8\","
               "\"Twist Drill (Ø4.2 mm, HSS) [T042]; Spiral Flute Tap (M5×0.8 mm, HSS-E, TiN-coated) [T043]\","
               "\"T042: 20 m/min, 0.1 mm/rev; T043: 15 m/min, 0.05 mm/rev\"",
           "threaded hole row");
  c.expect(lines[2].rfind("CylindricalShaft (measures.2),cylindrical-shaft-turning,"
                          "\"Rough Turning, Finish Turning\","
                          "Carbide Insert (Roughing) [unresolved]; Wiper Insert (Finishing) [unresolved]",
                          0) == 0,
           "shaft row");
}

// Standard tolerance generated from the size-range table and the grade
// factors, rounded to 1 um.
double oracle_um(int grade, double nominal) {
  static const double steps[] = {0, 3, 6, 10, 18, 30, 50, 80, 120, 180, 250, 315, 400, 500};
  static const double factor[] = {7, 10, 16, 25, 40, 64, 100, 160, 250};  // IT5..IT13
  int k = 1;
  while (nominal > steps[k]) ++k;
  const double lo = steps[k - 1] == 0 ? 1 : steps[k - 1];
  const double d = std::sqrt(lo * steps[k]);
  return std::round(factor[grade - 5] * (0.45 * std::cbrt(d) + 0.001 * d));
}

void it_grades(Checks& c) {
  for (double nominal = 3; nominal <= 500; nominal += 0.5) {
    for (int grade = 5; grade <= 13; ++grade) {
      c.expect(std::abs(it_tolerance_um(grade, nominal) - oracle_um(grade, nominal)) <= 1.0,
               "IT" + std::to_string(grade) + " at " + std::to_string(nominal));
    }
  }
  // Brute-force classification: smallest grade whose tolerance covers the
  // band, skipping bands within 1 um of a table value.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> nom(3, 500), band(3, 2400);
  for (int i = 0; i < 5000; ++i) {
    const double n = nom(rng), b = band(rng);
    int expect = 0;
    bool near = b <= oracle_um(5, n) + 1;
    for (int grade = 5; grade <= 13; ++grade) {
      const double t = oracle_um(grade, n);
      if (std::abs(t - b) <= 1.0) near = true;
      if (!expect && t >= b) expect = grade;
    }
    if (near || !expect) continue;
    c.expect(classify_tolerance_grade(n, b / 1000) == expect, "classify " + std::to_string(n));
  }
  c.expect(classify_tolerance_grade(28, 0.05 - -0.05) == 11, "Ø28 ±0.05 is IT11");
}

void adapter_guard(Checks& c) {
  using namespace std::chrono_literals;
  for (int seed = 0; seed < 100; ++seed) {
    const Category cat = kAllCategories[static_cast<std::size_t>(seed % 9)];
    const ErrorCode code = code_of([&] {
      auto ep = AdapterEndpoint::open(std::string("exec:") + DRAWPARSE_STUB + " bad " + std::to_string(seed), 5000ms);
      const ParseResult r = adapter_parse({"fuzz" + std::to_string(seed), cat, std::string("x")}, *ep);
      if (r.ok()) throw Error(ErrorCode::IoError, "record accepted");
      throw Error(ErrorCode::IoError, "error reply: " + r.error);
    });
    c.expect(code == ErrorCode::SchemaViolation, "seed " + std::to_string(seed) + " " +
                                                     std::string(error_code_name(code)));
  }
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Checks&)> body;
  double budgetSeconds;  // 0: none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "symbol table", symbol_table, 1},
      {2, "published score formula consistency", published_scores, 0},
      {3, "eval identity", eval_identity, 0},
      {4, "eval micro-aggregation", micro_aggregation, 0},
      {5, "parser round-trip", parser_round_trip, 30},
      {6, "golden fixtures", golden_fixtures, 0},
      {7, "rotated IoU oracle", rotated_iou_oracle, 60},
      {8, "detection metrics", detection_metrics, 0},
      {9, "augmentation invariants", augmentation, 0},
      {10, "dataset stats", dataset_stats, 0},
      {11, "worked recommendations", worked_recommendations, 0},
      {12, "IT grade oracle", it_grades, 0},
      {13, "adapter guard", adapter_guard, 0},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto t0 = Clock::now();
    try {
      cr.body(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (cr.budgetSeconds > 0) checks.expect(secs < cr.budgetSeconds, "over time budget");
    const bool ok = checks.ok();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.number << ": " << cr.title << " ("
              << checks.summary() << ", " << std::fixed << std::setprecision(2) << secs << " s)\n";
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
            << criteria.size() << "\n";
  return failed ? 1 : 0;
}
