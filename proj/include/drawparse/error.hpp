// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drawparse {

/// Stable error kinds. Every failure raised by the library carries one.
enum class ErrorCode {
  UnknownSymbol,
  MalformedJson,
  SchemaViolation,
  CategoryMismatch,
  DegenerateBox,
  NotARectangle,
  EmptyCrop,
  BadLine,
  UnknownClassId,
  EmptyTolerance,
  MalformedDatum,
  NoNominalValue,
  ConflictingTolerances,
  NotAThread,
  UnknownRoughnessForm,
  MalformedText,
  AdapterUnavailable,
  AdapterTimeout,
  OutOfTableRange,
  InvalidArgument,
  MissingMaterial,
  DuplicateToolId,
  ToolNotFound,
  NoCuttingData,
  IoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string path = {})
      : std::runtime_error(compose(code, message, path)),
        code_(code),
        detail_(std::move(message)),
        path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }
  /// Field path or file:line locator; empty when not applicable.
  const std::string& path() const noexcept { return path_; }

 private:
  static std::string compose(ErrorCode code, const std::string& message,
                             const std::string& path) {
    std::string out(error_code_name(code));
    if (!path.empty()) out += " at " + path;
    out += ": " + message;
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  std::string path_;
};

inline std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::CategoryMismatch: return "CategoryMismatch";
    case ErrorCode::DegenerateBox: return "DegenerateBox";
    case ErrorCode::NotARectangle: return "NotARectangle";
    case ErrorCode::EmptyCrop: return "EmptyCrop";
    case ErrorCode::BadLine: return "BadLine";
    case ErrorCode::UnknownClassId: return "UnknownClassId";
    case ErrorCode::EmptyTolerance: return "EmptyTolerance";
    case ErrorCode::MalformedDatum: return "MalformedDatum";
    case ErrorCode::NoNominalValue: return "NoNominalValue";
    case ErrorCode::ConflictingTolerances: return "ConflictingTolerances";
    case ErrorCode::NotAThread: return "NotAThread";
    case ErrorCode::UnknownRoughnessForm: return "UnknownRoughnessForm";
    case ErrorCode::MalformedText: return "MalformedText";
    case ErrorCode::AdapterUnavailable: return "AdapterUnavailable";
    case ErrorCode::AdapterTimeout: return "AdapterTimeout";
    case ErrorCode::OutOfTableRange: return "OutOfTableRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingMaterial: return "MissingMaterial";
    case ErrorCode::DuplicateToolId: return "DuplicateToolId";
    case ErrorCode::ToolNotFound: return "ToolNotFound";
    case ErrorCode::NoCuttingData: return "NoCuttingData";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace drawparse
