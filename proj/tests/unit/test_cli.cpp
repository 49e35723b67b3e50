// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the drawparse executable end to end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include <json.hpp>

#include "drawparse/cli.hpp"
#include "drawparse/dataset.hpp"
#include "files.hpp"
#include "gen.hpp"

using namespace drawparse;           // NOLINT
using namespace drawparse::testing;  // NOLINT

namespace {

struct Outcome {
  int code = -1;
  std::string err;
};

Outcome run(const std::string& args, const fs::path& errFile) {
  const std::string cmd = std::string(DRAWPARSE_CLI) + " " + args + " 2>" + errFile.string() + " >/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(errFile)};
}

std::string shaft_args() {
  const fs::path dir = fixture("shaft");
  return "pipeline --image " + (dir / "shaft.png").string() + " --labels " + (dir / "shaft.txt").string() +
         " --transcripts " + (dir / "transcripts").string();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
  }
  return out;
}

}  // namespace

TEST_CASE("usage errors") {
  const fs::path tmp = scratch("cli_usage");
  CHECK(run("--help", tmp / "err").code == 0);
  CHECK(run("", tmp / "err").code == cli::kExitFailure);
  CHECK(run("stats", tmp / "err").code == cli::kExitFailure);
  CHECK(run("eval --pred /nonexistent --gt /nonexistent", tmp / "err").code == cli::kExitFailure);
}

TEST_CASE("exit code mapping") {
  using cli::exit_code_for;
  CHECK(exit_code_for(ErrorCode::AdapterUnavailable) == 4);
  CHECK(exit_code_for(ErrorCode::AdapterTimeout) == 4);
  CHECK(exit_code_for(ErrorCode::MalformedJson) == 2);
  CHECK(exit_code_for(ErrorCode::BadLine) == 2);
  CHECK(exit_code_for(ErrorCode::IoError) == 1);
  CHECK(exit_code_for(ErrorCode::OutOfTableRange) == 1);
}

TEST_CASE("pipeline reproduces the shaft document") {
  const fs::path out = scratch("cli_pipeline");
  const Outcome r = run(shaft_args() + " --out " + out.string(), out.parent_path() / "cli_pipeline.err");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(out / "document.json") == slurp(fixture("golden/shaft_document.json")));
  CHECK(fs::exists(out / "overlay.svg"));
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "patches" / "shaft_0.png"));
  const auto failures = nlohmann::json::parse(slurp(out / "parse_failures.json"));
  CHECK(failures.empty());
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest.at("command") == "pipeline");
  CHECK(manifest.at("config").at("seed") == cli::kDefaultSeed);
}

TEST_CASE("pipeline through the stub adapter") {
  const fs::path out = scratch("cli_adapter");
  const fs::path err = out.parent_path() / "cli_adapter.err";
  const std::string stub = std::string("'exec:") + DRAWPARSE_STUB;
  Outcome r = run(shaft_args() + " --adapter " + stub + " echo' --out " + out.string(), err);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(out / "document.json") == slurp(fixture("golden/shaft_document.json")));

  r = run(shaft_args() + " --adapter " + stub + " bad 5' --out " + out.string(), err);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(slurp(out / "parse_failures.json")).size() == 9);
  r = run(shaft_args() + " --strict --adapter " + stub + " bad 5' --out " + out.string(), err);
  CHECK(r.code == cli::kExitStrict);

  r = run(shaft_args() + " --adapter tcp://127.0.0.1:1 --out " + out.string(), err);
  CHECK(r.code == cli::kExitAdapter);
  r = run(shaft_args() + " --adapter-timeout-ms 200 --adapter " + stub + " silent' --out " + out.string(),
          err);
  CHECK(r.code == cli::kExitAdapter);
}

TEST_CASE("pipeline with no detections") {
  const fs::path out = scratch("cli_empty");
  spit(out / "in" / "none.txt", "");
  const Outcome r = run("pipeline --image " + fixture("shaft/shaft.png").string() + " --labels " +
                            (out / "in" / "none.txt").string() + " --out " + (out / "run").string(),
                        out / "err");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(parse_document(slurp(out / "run" / "document.json")) == DrawingDocument{});
}

TEST_CASE("stats") {
  const fs::path tmp = scratch("cli_stats");
  fs::create_directories(tmp / "empty");
  Outcome r = run("stats " + (tmp / "empty").string() + " --out " + (tmp / "o1").string(), tmp / "err");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(tmp / "o1" / "stats.json"));
  CHECK(j.at("annotations") == 0);

  spit(tmp / "good" / "a.txt", "2 0.1 0.1 0.2 0.1 0.2 0.2 0.1 0.2\n2 0.5 0.5 0.6 0.5 0.6 0.6 0.5 0.6\n");
  spit(tmp / "good" / "b.txt", "0 0.1 0.1 0.2 0.1 0.2 0.2 0.1 0.2\n");
  r = run("stats " + (tmp / "good").string() + " --out " + (tmp / "o2").string(), tmp / "err");
  CHECK(r.code == 0);
  CHECK(slurp(tmp / "o2" / "stats.csv").find("Measures,2\n") != std::string::npos);

  spit(tmp / "bad" / "c.txt", "2 0.1 0.1 0.2 0.1 0.2 0.2 0.1 0.2\n2 0.5 nope\n");
  r = run("stats " + (tmp / "bad").string() + " --out " + (tmp / "o3").string(), tmp / "err");
  CHECK(r.code == cli::kExitFormat);
  CHECK(r.err.find("c.txt:2") != std::string::npos);
}

TEST_CASE("eval identity") {
  const fs::path tmp = scratch("cli_eval");
  for (const char* name : {"shaft_document.json", "bracket_document.json", "flange_document.json"}) {
    spit(tmp / "pred" / name, slurp(fixture(std::string("golden/") + name)));
    spit(tmp / "gt" / name, slurp(fixture(std::string("golden/") + name)));
  }
  const Outcome r = run("eval --pred " + (tmp / "pred").string() + " --gt " + (tmp / "gt").string() +
                            " --out " + (tmp / "o").string(),
                        tmp / "err");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto j = nlohmann::json::parse(slurp(tmp / "o" / "metrics.json"));
  CHECK(j.at("overall").at("precision") == 1.0);
  CHECK(j.at("overall").at("recall") == 1.0);
  CHECK(j.at("overall").at("hallucination") == 0.0);
  CHECK(fs::exists(tmp / "o" / "metrics.html"));
}

TEST_CASE("recommend on the shaft document") {
  const fs::path tmp = scratch("cli_recommend");
  const Outcome r = run("recommend " + fixture("golden/shaft_document.json").string() + " --out " + tmp.string(),
                        tmp.parent_path() / "cli_recommend.err");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string csv = slurp(tmp / "recommendations.csv");
  CHECK(csv.find("\"Drill Ø4.2 mm, Tap M5×0.8\"") != std::string::npos);
  CHECK(csv.find("Spiral Flute Tap (M5×0.8 mm, HSS-E, TiN-coated) [T043]") != std::string::npos);
  CHECK(csv.find("T043: 15 m/min, 0.05 mm/rev") != std::string::npos);
  CHECK(csv.find("\"Rough Turning, Finish Turning\"") != std::string::npos);
  CHECK(csv.find("Carbide Insert (Roughing)") != std::string::npos);
  CHECK(csv.find("Wiper Insert (Finishing)") != std::string::npos);

  const Outcome bad = run("recommend " + fixture("golden/shaft_document.json").string() +
                              " --hint nope --out " + tmp.string(),
                          tmp.parent_path() / "cli_recommend.err");
  CHECK(bad.code == cli::kExitFailure);
}

TEST_CASE("augment is deterministic") {
  const fs::path tmp = scratch("cli_augment");
  Gen g(71);
  std::vector<ImageJsonPair> pairs;
  for (int i = 0; i < 6; ++i) {
    const Category c = i % 2 ? Category::Thread : Category::GDT;
    pairs.push_back({"p" + std::to_string(i), c, 0, g.raster(16), gen_record(c, g)});
  }
  write_pairs(tmp / "pairs", pairs);
  const std::string base = "augment " + (tmp / "pairs").string() + " --category Thread --category GDT";
  REQUIRE(run(base + " --out " + (tmp / "a").string(), tmp / "err").code == 0);
  REQUIRE(run(base + " --out " + (tmp / "b").string(), tmp / "err").code == 0);
  REQUIRE(run(base + " --seed 99 --out " + (tmp / "c").string(), tmp / "err").code == 0);
  const auto a = tree(tmp / "a");
  CHECK(a.size() == 13);
  CHECK(a == tree(tmp / "b"));
  CHECK(a != tree(tmp / "c"));
  CHECK(run(base + " --category Hexagon --out " + (tmp / "d").string(), tmp / "err").code != 0);
}

TEST_CASE("render and validate") {
  const fs::path tmp = scratch("cli_render");
  Outcome r = run("render --image " + fixture("shaft/shaft.png").string() + " --labels " +
                      fixture("shaft/shaft.txt").string() + " --out " + tmp.string(),
                  tmp.parent_path() / "cli_render.err");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(tmp / "overlay.svg").find("<g class=\"detection\"") != std::string::npos);
  CHECK(slurp(tmp / "detections.csv").rfind("Class,Count,Avg. Confidence\n", 0) == 0);

  spit(tmp / "bad.json", "{\"GD&Ts\": [{\"index\": 1}]");
  r = run("validate " + fixture("golden/shaft_document.json").string() + " --out " + (tmp / "v1").string(),
          tmp / "err");
  CHECK(r.code == 0);
  r = run("validate " + (tmp / "bad.json").string() + " --out " + (tmp / "v2").string(), tmp / "err");
  CHECK(r.code == cli::kExitFormat);
}
