// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "drawparse/cli.hpp"
#include "drawparse/eval.hpp"
#include "drawparse/notation.hpp"
#include "drawparse/render.hpp"

namespace drawparse::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Collects artifacts and writes manifest.json last.
class Run {
 public:
  Run(std::string command, const RunConfig& cfg) : cfg_(cfg) {
    manifest_["command"] = std::move(command);
    manifest_["config"] = {
        {"seed", cfg.seed},
        {"dialect", cfg.dialect == SchemaDialect::Patch ? "patch" : "document"},
        {"margin", cfg.margin},
        {"iou", cfg.iou},
        {"adapter", cfg.adapter},
        {"adapterTimeoutMs", cfg.adapterTimeout.count()},
        {"strict", cfg.strict},
    };
    manifest_["inputs"] = Json::object();
    manifest_["artifacts"] = Json::array();
  }

  void input(const std::string& key, const fs::path& path) {
    manifest_["inputs"][key] = path.empty() ? std::string() : fs::absolute(path).lexically_normal().string();
  }

  void note(const std::string& key, Json value) { manifest_[key] = std::move(value); }

  fs::path write(const fs::path& relative, std::string_view content) {
    const fs::path full = cfg_.out / relative;
    fs::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + full.string());
    manifest_["artifacts"].push_back(relative.generic_string());
    return full;
  }

  void write_png_artifact(const fs::path& relative, const RasterPatch& raster) {
    const auto bytes = encode_png(raster);
    write(relative, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }

  void finish() {
    fs::create_directories(cfg_.out);
    std::ofstream out(cfg_.out / "manifest.json", std::ios::binary);
    out << manifest_.dump(2) << "\n";
    if (!out) throw Error(ErrorCode::IoError, "cannot write manifest");
  }

 private:
  const RunConfig& cfg_;
  Json manifest_;
};

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

std::vector<fs::path> files_with_extension(const fs::path& dir, std::string_view ext) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, "not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Line number out of a "line N" error path.
std::string line_of(const Error& e) {
  const std::string& p = e.path();
  if (p.rfind("line ", 0) == 0) return p.substr(5);
  return p.empty() ? "0" : p;
}

fs::path or_default(const fs::path& p, const fs::path& fallback) {
  return p.empty() ? default_data_dir() / fallback : p;
}

LabeledDrawing load_drawing(const fs::path& image, const fs::path& labels) {
  LabeledDrawing d;
  d.imageRef = image.string();
  std::tie(d.imageW, d.imageH) = png_dimensions(image);
  try {
    d.detections = read_obb_labels(read_text(labels), d.imageW, d.imageH);
  } catch (const Error& e) {
    throw Error(e.code(), e.detail(), labels.string() + ":" + line_of(e));
  }
  return d;
}

/// A document or a single-category patch label.
DrawingDocument load_any_document(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedJson, e.what());
    }
    DrawingDocument doc;
    if (j.is_object() && j.size() == 1) {
      add_record(doc, parse_patch_label(text));
      return doc;
    }
    return parse_document(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.filename().string() + ": " + e.detail(), e.path());
  }
}

Json stats_json(const DatasetStats& s) {
  Json per = Json::object();
  for (Category c : kAllCategories) per[std::string(category_name(c))] = s.count(c);
  return {{"drawings", s.drawingsCount},
          {"annotations", s.totalAnnotations},
          {"meanPatchesPerDrawing", s.meanPatchesPerDrawing},
          {"perCategory", per}};
}

std::string href_for(const fs::path& image, const fs::path& outDir) {
  std::error_code ec;
  const fs::path rel = fs::relative(fs::absolute(image), fs::absolute(outDir), ec);
  return (ec || rel.empty() ? fs::absolute(image) : rel).generic_string();
}

std::string parse_failure_json(const Json& failures) { return failures.dump(2) + "\n"; }

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AdapterUnavailable:
    case ErrorCode::AdapterTimeout:
      return kExitAdapter;
    case ErrorCode::IoError:
    case ErrorCode::OutOfTableRange:
    case ErrorCode::ToolNotFound:
    case ErrorCode::NoCuttingData:
    case ErrorCode::EmptyCrop:
      return kExitFailure;
    default:
      return kExitFormat;
  }
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("DRAWPARSE_DATA_DIR"); env && *env) return env;
  return DRAWPARSE_DEFAULT_DATA_DIR;
}

AugmentSpec parse_augment_spec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  auto bad = [](const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::SchemaViolation, msg, path);
  };
  if (!j.is_object()) bad("", "augmentation spec must be an object");
  AugmentSpec spec;
  for (const auto& [key, _] : j.items()) {
    if (key != "categories" && key != "ops") bad(key, "unknown key");
  }
  const Json& cats = j.value("categories", Json::array());
  if (!cats.is_array()) bad("categories", "must be a list");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const auto c = cats[i].is_string() ? parse_category(cats[i].get<std::string>()) : std::nullopt;
    if (!c) bad("categories." + std::to_string(i), "unknown category " + cats[i].dump());
    spec.categories.push_back(*c);
  }
  const Json& ops = j.value("ops", Json::array());
  if (!ops.is_array()) bad("ops", "must be a list");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = "ops." + std::to_string(i);
    const Json& o = ops[i];
    if (!o.is_object()) bad(path, "op must be an object");
    AugmentationOp op;
    const auto kind = o.contains("kind") && o["kind"].is_string()
                          ? parse_augment_kind(o["kind"].get<std::string>())
                          : std::nullopt;
    if (!kind) bad(path + ".kind", "unknown augmentation kind");
    op.kind = *kind;
    for (const auto& [key, v] : o.items()) {
      if (key == "kind") continue;
      if (key == "angles") {
        if (!v.is_array()) bad(path + ".angles", "must be a list");
        op.angles.clear();
        for (const auto& a : v) {
          if (!a.is_number_integer()) bad(path + ".angles", "angles must be integers");
          op.angles.push_back(a.get<int>());
        }
        continue;
      }
      if (!v.is_number()) bad(path + "." + key, "must be a number");
      if (key == "probability") {
        op.applyProbability = v.get<double>();
      } else if (key == "minFactor") {
        op.minFactor = v.get<double>();
      } else if (key == "maxFactor") {
        op.maxFactor = v.get<double>();
      } else {
        bad(path + "." + key, "unknown op key");
      }
    }
    spec.ops.push_back(std::move(op));
  }
  validate_pipeline(spec.ops);
  return spec;
}

// ---------------------------------------------------------------------------

int cmd_stats(const StatsArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("stats", cfg);
    run.input("labels", args.labels);
    std::vector<LabeledDrawing> drawings;
    std::vector<std::string> offenders;
    for (const auto& file : files_with_extension(args.labels, ".txt")) {
      LabeledDrawing d;
      d.imageRef = file.stem().string();
      d.imageW = d.imageH = 1000;
      fs::path png = file;
      png.replace_extension(".png");
      if (fs::exists(png)) std::tie(d.imageW, d.imageH) = png_dimensions(png);
      try {
        d.detections = read_obb_labels(read_text(file), d.imageW, d.imageH);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError) throw;
        offenders.push_back(file.string() + ":" + line_of(e) + ": " + e.detail());
        continue;
      }
      drawings.push_back(std::move(d));
    }
    if (!offenders.empty()) {
      for (const auto& o : offenders) log << o << "\n";
      log << offenders.size() << " label file(s) rejected\n";
      return kExitFormat;
    }
    const DatasetStats stats = category_histogram(drawings);
    run.write("stats.json", stats_json(stats).dump(2) + "\n");
    std::string csv = "Category,Count\n";
    for (Category c : kAllCategories) {
      csv += std::string(category_display_name(c)) + "," + std::to_string(stats.count(c)) + "\n";
    }
    csv += "Total," + std::to_string(stats.totalAnnotations) + "\n";
    run.write("stats.csv", csv);
    run.finish();
    log << stats.drawingsCount << " drawings, " << stats.totalAnnotations << " annotations\n";
    return kExitOk;
  });
}

int cmd_pipeline(const PipelineArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("pipeline", cfg);
    run.input("image", args.image);
    run.input("labels", args.labels);
    run.input("transcripts", args.transcripts);
    const OverlayStyle style = load_overlay_style(or_default(args.style, "style/overlay.json"));
    const LabeledDrawing drawing = load_drawing(args.image, args.labels);
    const RasterPatch image = read_png(args.image);
    const std::string stem = args.image.stem().string();

    std::unique_ptr<AdapterEndpoint> endpoint;
    if (!cfg.adapter.empty()) endpoint = AdapterEndpoint::open(cfg.adapter, cfg.adapterTimeout);

    DrawingDocument doc;
    Json failures = Json::array();
    for (std::size_t i = 0; i < drawing.detections.size(); ++i) {
      const Detection& d = drawing.detections[i];
      const std::string id = stem + "_" + std::to_string(i);
      const RasterPatch patch = extract_patch(image, d.box, cfg.margin);
      run.write_png_artifact(fs::path("patches") / (id + ".png"), patch);
      const fs::path transcript = args.transcripts / (std::to_string(i) + ".txt");
      const bool haveText = !args.transcripts.empty() && fs::exists(transcript);
      auto fail = [&](const std::string& code, const std::string& message) {
        failures.push_back({{"index", i},
                            {"id", id},
                            {"category", std::string(category_name(d.category))},
                            {"code", code},
                            {"message", message}});
      };
      try {
        if (endpoint) {
          ParseRequest req{id, d.category, {}};
          if (haveText) {
            req.payload = read_text(transcript);
          } else {
            req.payload = encode_png(patch);
          }
          ParseResult res = adapter_parse(req, *endpoint);
          if (!res.ok()) {
            fail("AdapterError", res.error);
            continue;
          }
          add_record(doc, *res.record);
        } else {
          if (!haveText) {
            fail("MissingTranscript", "no transcript " + transcript.filename().string());
            continue;
          }
          add_record(doc, parse_annotation(d.category, read_text(transcript)));
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::AdapterUnavailable || e.code() == ErrorCode::AdapterTimeout ||
            e.code() == ErrorCode::IoError) {
          throw;
        }
        fail(std::string(error_code_name(e.code())), e.what());
      }
    }

    run.write("document.json", serialize_document(doc, cfg.dialect));
    run.write("overlay.svg", render_overlay(drawing.detections, drawing.imageW, drawing.imageH,
                                            style, href_for(args.image, cfg.out)));
    run.write("parse_failures.json", parse_failure_json(failures));
    run.note("detections", drawing.detections.size());
    run.note("parseFailures", failures.size());
    run.finish();
    log << drawing.detections.size() << " detections, " << failures.size()
        << " parse failure(s)\n";
    for (const auto& f : failures) {
      log << "  " << f["id"].get<std::string>() << ": " << f["message"].get<std::string>() << "\n";
    }
    return cfg.strict && !failures.empty() ? kExitStrict : kExitOk;
  });
}

int cmd_eval(const EvalArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("eval", cfg);
    run.input("pred", args.pred);
    run.input("gt", args.gt);
    std::set<std::string> names;
    for (const auto& dir : {args.pred, args.gt}) {
      for (const auto& f : files_with_extension(dir, ".json")) names.insert(f.filename().string());
    }
    std::vector<std::pair<Category, MatchCounts>> perPatch;
    Json perFile = Json::array();
    for (const auto& name : names) {
      const fs::path p = args.pred / name;
      const fs::path g = args.gt / name;
      const DrawingDocument pred = fs::exists(p) ? load_any_document(p) : DrawingDocument{};
      const DrawingDocument gt = fs::exists(g) ? load_any_document(g) : DrawingDocument{};
      MatchCounts fileTotal;
      for (const auto& entry : compare_documents(pred, gt)) {
        perPatch.push_back(entry);
        fileTotal += entry.second;
      }
      perFile.push_back({{"file", name}, {"tp", fileTotal.tp}, {"fp", fileTotal.fp}, {"fn", fileTotal.fn}});
    }
    const MetricsReport report = aggregate_report(perPatch);
    run.write("metrics.csv", report_csv(report));
    run.write("metrics.json", report_json(report));
    run.write("metrics.html", render_report_html(report));
    run.note("files", perFile);
    run.finish();
    const auto& o = report.overall;
    log << names.size() << " file pair(s); overall P=" << o.row.precision << " R=" << o.row.recall
        << " F1=" << o.row.f1 << " H=" << o.row.hallucination << "\n";
    return kExitOk;
  });
}

int cmd_recommend(const RecommendArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("recommend", cfg);
    const fs::path rulesPath = or_default(args.rules, "rules/machining_rules.json");
    const fs::path invPath = or_default(args.inventory, "tooldb/inventory.csv");
    const fs::path cutPath = or_default(args.cutting, "tooldb/cutting.csv");
    run.input("document", args.document);
    run.input("rules", rulesPath);
    run.input("inventory", invPath);
    run.input("cutting", cutPath);
    const DrawingDocument doc = load_any_document(args.document);
    const RuleSet rules = load_rules(rulesPath);
    const ToolDatabase db = load_tool_db(invPath, cutPath);
    ExtractOptions opts;
    opts.material = args.material;
    for (const auto& [index, name] : args.hints) {
      const auto t = parse_feature_type(name);
      if (!t) throw Error(ErrorCode::InvalidArgument, "unknown feature type '" + name + "'");
      opts.measureHints[index] = *t;
    }
    std::vector<Recommendation> recs;
    for (const auto& ctx : extract_features(doc, opts)) recs.push_back(recommend(ctx, rules, db));
    run.write("recommendations.json", recommendations_json(recs));
    run.write("recommendations.html", render_recommendations_html(recs));
    run.write("recommendations.csv", render_recommendations_csv(recs));
    run.finish();
    for (const auto& r : recs) {
      log << feature_type_name(r.feature.featureType) << " (" << r.feature.source << "): ";
      if (r.operations.empty()) log << "no matching rule";
      for (std::size_t i = 0; i < r.operations.size(); ++i) log << (i ? ", " : "") << r.operations[i];
      log << "\n";
    }
    return kExitOk;
  });
}

int cmd_augment(const AugmentArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("augment", cfg);
    const fs::path specPath = or_default(args.pipeline, "dataset/augment_pipeline.json");
    run.input("pairs", args.pairs);
    run.input("pipeline", specPath);
    AugmentSpec spec = parse_augment_spec(read_text(specPath));
    if (!args.categories.empty()) {
      spec.categories.clear();
      for (const auto& name : args.categories) {
        const auto c = parse_category(name);
        if (!c) throw Error(ErrorCode::InvalidArgument, "unknown category '" + name + "'");
        spec.categories.push_back(*c);
      }
    }
    if (spec.ops.empty()) spec.ops = default_pipeline();
    const std::set<Category> selected(spec.categories.begin(), spec.categories.end());
    Json cats = Json::array();
    for (Category c : kAllCategories) {
      if (selected.count(c)) cats.push_back(std::string(category_name(c)));
    }
    run.note("categories", cats);
    std::size_t done = 0;
    for (const auto& pair : list_pairs(args.pairs)) {
      if (!selected.count(pair.category)) continue;
      const std::string key = std::string(category_name(pair.category)) + "/" + pair.id;
      const RasterPatch out = augment(read_png(pair.png), spec.ops, derive_seed(cfg.seed, key));
      const fs::path dir = fs::path("pairs") / std::string(category_name(pair.category));
      run.write_png_artifact(dir / (pair.id + ".png"), out);
      if (fs::exists(pair.json)) run.write(dir / (pair.id + ".json"), read_text(pair.json));
      ++done;
    }
    run.note("augmented", done);
    run.finish();
    log << done << " pair(s) augmented\n";
    return kExitOk;
  });
}

int cmd_render(const RenderArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("render", cfg);
    run.input("image", args.image);
    run.input("labels", args.labels);
    const OverlayStyle style = load_overlay_style(or_default(args.style, "style/overlay.json"));
    const LabeledDrawing drawing = load_drawing(args.image, args.labels);
    run.write("overlay.svg", render_overlay(drawing.detections, drawing.imageW, drawing.imageH,
                                            style, href_for(args.image, cfg.out)));
    const auto rows = summarize_detections(drawing.detections);
    run.write("detections.html", render_detection_summary_html(rows));
    run.write("detections.csv", render_detection_summary_csv(rows));
    run.finish();
    log << drawing.detections.size() << " detection(s) rendered\n";
    return kExitOk;
  });
}

int cmd_validate(const ValidateArgs& args, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Run run("validate", cfg);
    Json results = Json::array();
    int worst = kExitOk;
    for (const auto& file : args.files) {
      try {
        load_any_document(file);
        results.push_back({{"file", file.string()}, {"ok", true}});
        log << "ok " << file.string() << "\n";
      } catch (const Error& e) {
        results.push_back({{"file", file.string()},
                           {"ok", false},
                           {"code", std::string(error_code_name(e.code()))},
                           {"path", e.path()},
                           {"message", e.detail()}});
        log << file.string() << ": " << e.what() << "\n";
        worst = std::max(worst, exit_code_for(e.code()));
      }
    }
    run.write("validation.json", results.dump(2) + "\n");
    run.finish();
    return worst;
  });
}

}  // namespace drawparse::cli
