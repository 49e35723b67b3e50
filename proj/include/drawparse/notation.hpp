// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

// Canonical text forms for annotation values: decimals, tolerance zones,
// datum labels, and the measure / thread / radius / roughness callouts.
// Both JSON dialects and the transcription parsers go through these.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drawparse/schema.hpp"

namespace drawparse::notation {

std::string trim(std::string_view text);
/// Trims and collapses every run of whitespace (newlines included) to one
/// ASCII space.
std::string normalize_space(std::string_view text);
/// True when text is already in normalize_space form and non-empty.
bool is_normalized_text(std::string_view text);
std::vector<std::string> split_lines(std::string_view text);

/// Unsigned decimal with mandatory leading digit: 0, 12, 0.020.
bool is_decimal(std::string_view text) noexcept;
/// Optional sign followed by a decimal.
bool is_signed_decimal(std::string_view text) noexcept;
std::optional<double> decimal_value(std::string_view text) noexcept;
bool is_positive_decimal(std::string_view text) noexcept;
/// Positive integer without leading zeros.
std::optional<int> parse_count(std::string_view text) noexcept;

/// Replaces typographic variants with their canonical spelling:
/// U+2212 minus -> '-', circled modifiers -> "(M)" etc.
std::string normalize_symbols(std::string_view text);

// --- GD&T tolerance zone -------------------------------------------------

/// Canonical form "[U+2300 ]<decimal>[ (M)|(L)|(S)]". Accepts the escape,
/// either diameter glyph, glued modifiers. Throws Error{EmptyTolerance}.
std::string canonical_tolerance(std::string_view text);
bool is_canonical_tolerance(std::string_view text) noexcept;
/// "U+2300 0.014 (M)" -> "Ø0.014 (M)".
std::string tolerance_to_document(std::string_view canonical);
std::optional<double> tolerance_value(std::string_view canonical) noexcept;

// --- datums ---------------------------------------------------------------

enum class DatumStyle { Verbatim, Attached, Spaced };

/// Letter (or hyphenated composite) with optional "(M)"/"(L)"/"(S)",
/// attached or after one space.
bool is_datum_label(std::string_view text) noexcept;
std::string canonicalize_datum(std::string_view label, DatumStyle style);
/// "B(M)" -> "B".
std::string datum_base(std::string_view label);

// --- measures -------------------------------------------------------------

enum class CalloutStyle {
  Transcription,  // 8X U+2300 6.5 +0.1 -0.1
  Document,       // 8X Ø6.5 +0.1/-0.1
};

bool is_nominal(std::string_view text) noexcept;
bool nominal_is_diameter(std::string_view nominal) noexcept;
std::optional<double> nominal_number(std::string_view nominal) noexcept;

/// Renders the structured fields; ignores feature and displayValue.
std::string format_measure(const Measure& m, CalloutStyle style);
/// Decomposes a dimension callout. Sets displayValue to the normalized
/// text when neither canonical render reproduces it. Throws
/// Error{NoNominalValue} or Error{ConflictingTolerances}.
Measure measure_from_callout(std::string_view text);
/// Text placed in a document-dialect "Value" field.
std::string measure_document_value(const Measure& m);

// --- threads --------------------------------------------------------------

bool is_thread_designation(std::string_view text) noexcept;
/// "6H", "6g", "4h6h".
bool is_fit_class(std::string_view text) noexcept;
std::optional<double> thread_major_diameter(std::string_view designation);
std::string format_thread(const ThreadSpec& t);
/// Throws Error{NotAThread} when no series letter starts the designation,
/// Error{MalformedText} for unparseable remainders.
ThreadSpec thread_from_callout(std::string_view text);

// --- radii ----------------------------------------------------------------

bool is_radius_value(std::string_view text) noexcept;
std::string format_radius(const RadiusSpec& r);
RadiusSpec radius_from_callout(std::string_view text);

// --- surface roughness ----------------------------------------------------

inline constexpr std::string_view kMicron = "\xC2\xB5m";  // "µm"

bool is_roughness_value(RoughnessParameter p, std::string_view value) noexcept;
std::string format_roughness(const SurfaceRoughnessSpec& s);
/// Throws Error{UnknownRoughnessForm}.
SurfaceRoughnessSpec roughness_from_callout(std::string_view text);
/// Ra in micrometres; N-grades map through the ISO 1302 grade table.
std::optional<double> roughness_ra_um(const SurfaceRoughnessSpec& s) noexcept;

}  // namespace drawparse::notation
