// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Command implementations behind the drawparse executable. Each returns a
// process exit code and writes its artifacts plus manifest.json under
// RunConfig::out.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "drawparse/dataset.hpp"
#include "drawparse/decide.hpp"
#include "drawparse/geometry.hpp"
#include "drawparse/parser.hpp"
#include "drawparse/schema.hpp"

namespace drawparse::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitFormat = 2;
inline constexpr int kExitStrict = 3;
inline constexpr int kExitAdapter = 4;

inline constexpr std::uint64_t kDefaultSeed = 1234567;

/// Exit code for a library error: adapter errors 4, input-format errors 2,
/// anything else 1.
int exit_code_for(ErrorCode code) noexcept;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  SchemaDialect dialect = SchemaDialect::Document;
  double margin = kDefaultMarginFraction;
  double iou = 0.5;
  std::string adapter;  // empty: grammar backend
  std::chrono::milliseconds adapterTimeout = kDefaultAdapterTimeout;
  bool strict = false;
  fs::path out = "out";
};

/// Shipped data directory (rules, tool database, style, dataset metadata).
fs::path default_data_dir();

struct StatsArgs {
  fs::path labels;  // directory of *.txt label files
};
int cmd_stats(const StatsArgs& args, const RunConfig& cfg, std::ostream& log);

struct PipelineArgs {
  fs::path image;
  fs::path labels;
  /// <index>.txt per detection; Measure transcripts may start with
  /// "@feature: <label>".
  fs::path transcripts;
  fs::path style;  // empty: shipped style
};
int cmd_pipeline(const PipelineArgs& args, const RunConfig& cfg, std::ostream& log);

struct EvalArgs {
  fs::path pred;  // directories of *.json, paired by file name
  fs::path gt;
};
int cmd_eval(const EvalArgs& args, const RunConfig& cfg, std::ostream& log);

struct RecommendArgs {
  fs::path document;
  fs::path rules;      // empty: shipped rule file
  fs::path inventory;  // empty: shipped inventory
  fs::path cutting;    // empty: shipped cutting data
  std::optional<std::string> material;
  /// measure index (0-based) -> feature type name
  std::map<std::size_t, std::string> hints;
};
int cmd_recommend(const RecommendArgs& args, const RunConfig& cfg, std::ostream& log);

struct AugmentArgs {
  fs::path pairs;
  /// {"categories": [...], "ops": [...]}; empty: shipped pipeline.
  fs::path pipeline;
  /// When non-empty, replaces the category list from the pipeline file.
  std::vector<std::string> categories;
};
int cmd_augment(const AugmentArgs& args, const RunConfig& cfg, std::ostream& log);

struct RenderArgs {
  fs::path image;
  fs::path labels;
  fs::path style;
};
int cmd_render(const RenderArgs& args, const RunConfig& cfg, std::ostream& log);

struct ValidateArgs {
  std::vector<fs::path> files;  // documents or patch labels
};
int cmd_validate(const ValidateArgs& args, const RunConfig& cfg, std::ostream& log);

/// Parses an augmentation spec file.
struct AugmentSpec {
  std::vector<Category> categories;
  std::vector<AugmentationOp> ops;
};
/// Throws Error{MalformedJson}, Error{SchemaViolation} (unknown category or
/// op names included).
AugmentSpec parse_augment_spec(std::string_view json);

}  // namespace drawparse::cli
