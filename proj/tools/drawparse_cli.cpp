// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <CLI11.hpp>

#include "drawparse/cli.hpp"

namespace {

using namespace drawparse;       // NOLINT
using namespace drawparse::cli;  // NOLINT

void add_common(CLI::App& cmd, RunConfig& cfg, std::string& dialect, long long& timeoutMs) {
  cmd.add_option("--seed", cfg.seed, "Run seed")->capture_default_str();
  cmd.add_option("--dialect", dialect, "Output dialect")
      ->check(CLI::IsMember({"patch", "document"}))
      ->capture_default_str();
  cmd.add_option("--margin", cfg.margin, "Patch margin fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--iou", cfg.iou, "IoU threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd.add_option("--adapter", cfg.adapter, "Parser endpoint: exec:<command> or tcp://host:port");
  cmd.add_option("--adapter-timeout-ms", timeoutMs, "Adapter timeout")->capture_default_str();
  cmd.add_flag("--strict", cfg.strict, "Fail when any patch fails to parse");
  cmd.add_option("--out", cfg.out, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drawparse: engineering drawing annotation toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string dialect = "document";
  long long timeoutMs = kDefaultAdapterTimeout.count();

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Per-category annotation counts of a label directory");
  s->add_option("labels", stats.labels, "Directory of label files")->required();
  add_common(*s, cfg, dialect, timeoutMs);

  PipelineArgs pipe;
  auto* p = app.add_subcommand("pipeline", "Crop, parse and assemble a drawing document");
  p->add_option("--image", pipe.image, "Drawing PNG")->required()->check(CLI::ExistingFile);
  p->add_option("--labels", pipe.labels, "OBB label file")->required()->check(CLI::ExistingFile);
  p->add_option("--transcripts", pipe.transcripts, "Directory of <index>.txt transcripts");
  p->add_option("--style", pipe.style, "Overlay style JSON");
  add_common(*p, cfg, dialect, timeoutMs);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Field-level scores of predicted documents");
  e->add_option("--pred", ev.pred, "Predicted documents")->required()->check(CLI::ExistingDirectory);
  e->add_option("--gt", ev.gt, "Ground-truth documents")->required()->check(CLI::ExistingDirectory);
  add_common(*e, cfg, dialect, timeoutMs);

  RecommendArgs rec;
  std::vector<std::string> hints;
  std::string material;
  auto* r = app.add_subcommand("recommend", "Machining operations and tools for a document");
  r->add_option("document", rec.document, "Drawing document JSON")->required()->check(CLI::ExistingFile);
  r->add_option("--rules", rec.rules, "Rule file");
  r->add_option("--inventory", rec.inventory, "Tool inventory CSV");
  r->add_option("--cutting", rec.cutting, "Cutting data CSV");
  r->add_option("--material", material, "Workpiece material, overrides the document");
  r->add_option("--hint", hints, "Measure feature type, <index>=<FeatureType>");
  add_common(*r, cfg, dialect, timeoutMs);

  AugmentArgs aug;
  auto* a = app.add_subcommand("augment", "Seeded augmentation of image/label pairs");
  a->add_option("pairs", aug.pairs, "Pairs directory")->required()->check(CLI::ExistingDirectory);
  a->add_option("--pipeline", aug.pipeline, "Augmentation spec JSON");
  a->add_option("--category", aug.categories, "Category to augment (repeatable)");
  add_common(*a, cfg, dialect, timeoutMs);

  RenderArgs ren;
  auto* v = app.add_subcommand("render", "SVG overlay and detection summary");
  v->add_option("--image", ren.image, "Drawing PNG")->required()->check(CLI::ExistingFile);
  v->add_option("--labels", ren.labels, "OBB label file")->required()->check(CLI::ExistingFile);
  v->add_option("--style", ren.style, "Overlay style JSON");
  add_common(*v, cfg, dialect, timeoutMs);

  ValidateArgs val;
  auto* c = app.add_subcommand("validate", "Check documents or patch labels against the schema");
  c->add_option("files", val.files, "JSON files")->required()->check(CLI::ExistingFile);
  add_common(*c, cfg, dialect, timeoutMs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitOk : kExitFailure;
  }

  cfg.dialect = *parse_dialect(dialect);
  cfg.adapterTimeout = std::chrono::milliseconds(timeoutMs);
  if (!material.empty()) rec.material = material;
  for (const auto& h : hints) {
    const auto eq = h.find('=');
    std::size_t index = 0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument(h);
      index = std::stoul(h.substr(0, eq));
    } catch (const std::exception&) {
      std::cerr << "error: --hint expects <index>=<FeatureType>, got '" << h << "'\n";
      return kExitFailure;
    }
    rec.hints[index] = h.substr(eq + 1);
  }

  std::ostream& log = std::cerr;
  if (s->parsed()) return cmd_stats(stats, cfg, log);
  if (p->parsed()) return cmd_pipeline(pipe, cfg, log);
  if (e->parsed()) return cmd_eval(ev, cfg, log);
  if (r->parsed()) return cmd_recommend(rec, cfg, log);
  if (a->parsed()) return cmd_augment(aug, cfg, log);
  if (v->parsed()) return cmd_render(ren, cfg, log);
  return cmd_validate(val, cfg, log);
}
