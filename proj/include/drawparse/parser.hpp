// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Grammar parsers from annotation transcriptions to records, the canonical
// renderer they invert, and the line-delimited JSON adapter protocol for an
// external parser process.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drawparse/schema.hpp"

namespace drawparse {

/// One frame per non-empty line. Compartments split on '|', else on runs of
/// two or more spaces, else by token scan. Throws Error{UnknownSymbol},
/// Error{EmptyTolerance}, Error{MalformedDatum}, Error{MalformedText}.
std::vector<GdtFrame> parse_gdt(std::string_view text);
/// Throws Error{NoNominalValue}, Error{ConflictingTolerances}.
Measure parse_measure(std::string_view text);
/// Throws Error{NotAThread}, Error{MalformedText}.
ThreadSpec parse_thread(std::string_view text);
/// Throws Error{UnknownRoughnessForm}.
SurfaceRoughnessSpec parse_surface_roughness(std::string_view text);
RadiusSpec parse_radius(std::string_view text);

/// Dispatches on category. Measure transcriptions may start with an
/// "@feature: <label>" line. The result always validates; violations the
/// category parser lets through raise Error{SchemaViolation}.
AnnotationRecord parse_annotation(Category category, std::string_view text);

/// Canonical transcription; parse_annotation(category_of(r),
/// render_annotation(r)) == r for every valid record.
std::string render_annotation(const AnnotationRecord& record);

// ---------------------------------------------------------------------------
// Adapter

struct ParseRequest {
  std::string id;
  Category category = Category::GDT;
  /// Text transcription or PNG bytes.
  std::variant<std::string, std::vector<std::uint8_t>> payload;
};

struct ParseResult {
  std::string id;
  std::optional<AnnotationRecord> record;
  std::string error;  // set when the adapter reported a failure
  bool ok() const noexcept { return record.has_value(); }
};

std::string base64_encode(std::span<const std::uint8_t> bytes);

/// {"id":..., "category":..., "text"|"image":...} without trailing newline.
std::string encode_request(const ParseRequest& request);
/// Validates a response line against the expected category. Throws
/// Error{SchemaViolation} for anything that is not a well-formed response
/// carrying a valid record of that category.
ParseResult decode_response(std::string_view line, Category expected);

inline constexpr std::chrono::milliseconds kDefaultAdapterTimeout{30000};

/// Byte-stream channel to an adapter. Endpoints:
///   exec:<shell command>   child process on stdin/stdout
///   tcp://<host>:<port>    TCP connection
class AdapterEndpoint {
 public:
  /// Throws Error{AdapterUnavailable} when the endpoint cannot be opened,
  /// Error{InvalidArgument} for an unknown endpoint syntax.
  static std::unique_ptr<AdapterEndpoint> open(
      std::string_view spec, std::chrono::milliseconds timeout = kDefaultAdapterTimeout);

  virtual ~AdapterEndpoint() = default;
  AdapterEndpoint(const AdapterEndpoint&) = delete;
  AdapterEndpoint& operator=(const AdapterEndpoint&) = delete;

  /// Sends every request, then collects responses in any order and returns
  /// them in request order. Throws Error{AdapterUnavailable} when the channel
  /// closes, Error{AdapterTimeout} when no byte arrives within the timeout,
  /// Error{SchemaViolation} for invalid output (including unknown ids).
  std::vector<ParseResult> parse_batch(std::span<const ParseRequest> requests);

  std::chrono::milliseconds timeout() const noexcept { return timeout_; }

 protected:
  AdapterEndpoint(int readFd, int writeFd, std::chrono::milliseconds timeout)
      : readFd_(readFd), writeFd_(writeFd), timeout_(timeout) {}
  int readFd_;
  int writeFd_;

 private:
  std::chrono::milliseconds timeout_;
  std::string buffer_;
};

/// Single request through an open endpoint.
ParseResult adapter_parse(const ParseRequest& request, AdapterEndpoint& endpoint);

}  // namespace drawparse
