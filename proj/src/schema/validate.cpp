// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "drawparse/notation.hpp"
#include "drawparse/schema.hpp"

namespace drawparse {
namespace {

using namespace notation;  // NOLINT

class Checker {
 public:
  explicit Checker(std::vector<Violation>& out) : out_(out) {}

  void fail(const std::string& path, std::string message) {
    out_.push_back({path, std::move(message)});
  }

  void quantity(const std::string& path, const std::optional<int>& q) {
    if (q && *q <= 0) fail(path, "quantity must be a positive integer");
  }

  void text(const std::string& path, const std::string& value, bool required) {
    if (value.empty()) {
      if (required) fail(path, "must not be empty");
      return;
    }
    if (!is_normalized_text(value)) {
      fail(path, "must be trimmed single-spaced text");
    }
  }

  void frame(const std::string& p, const GdtFrame& f) {
    if (f.index < 1) fail(p + ".index", "must be a positive ordinal");
    if (!is_gdt_symbol(f.characteristic)) {
      fail(p + ".geometricCharacteristic",
           format_codepoint_escape(f.characteristic) + " is not a GD&T symbol");
    }
    if (f.tolerance.empty()) {
      fail(p + ".tolerance", "tolerance must not be empty");
    } else if (!is_canonical_tolerance(f.tolerance)) {
      fail(p + ".tolerance", "'" + f.tolerance + "' is not a canonical tolerance");
    }
    for (std::size_t i = 0; i < f.datums.size(); ++i) {
      if (!is_datum_label(f.datums[i])) {
        fail(p + ".datumReference." + std::to_string(i + 1),
             "'" + f.datums[i] + "' is not a datum label");
      }
    }
  }

  void frames(const std::string& p, const std::vector<GdtFrame>& frames) {
    std::set<int> seen;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const auto& f = frames[i];
      frame(p + "." + std::to_string(i + 1), f);
      if (!seen.insert(f.index).second) {
        fail(p + "." + std::to_string(i + 1) + ".index",
             "duplicate index " + std::to_string(f.index));
      }
    }
    int expect = 1;
    for (int idx : seen) {
      if (idx != expect++) {
        fail(p, "indices must be contiguous from 1");
        break;
      }
    }
  }

  void measure(const std::string& p, const Measure& m) {
    quantity(p + ".quantity", m.quantity);
    if (m.nominalValue.empty()) {
      fail(p + ".nominalValue", "nominal value is required");
    } else if (!is_nominal(m.nominalValue)) {
      fail(p + ".nominalValue", "'" + m.nominalValue + "' is not a nominal value");
    }
    if (!m.tolerance.empty()) {
      const std::string pm = "\xC2\xB1";
      if (m.tolerance.rfind(pm, 0) != 0 ||
          !is_decimal(std::string_view(m.tolerance).substr(pm.size()))) {
        fail(p + ".tolerance", "'" + m.tolerance + "' is not ±<decimal>");
      }
    }
    for (const auto& [key, value] :
         {std::pair{"upperLimit", &m.upperLimit}, {"lowerLimit", &m.lowerLimit}}) {
      if (!value->empty() && !is_signed_decimal(*value)) {
        fail(p + "." + key, "'" + *value + "' is not a signed decimal");
      }
    }
    if (!m.tolerance.empty() && (!m.upperLimit.empty() || !m.lowerLimit.empty())) {
      fail(p + ".tolerance", "symmetric tolerance and limits are exclusive");
    }
    auto up = decimal_value(m.upperLimit);
    auto lo = decimal_value(m.lowerLimit);
    if (up && lo && *up < *lo) fail(p + ".upperLimit", "upper < lower");
    text(p + ".feature", m.feature, false);
    if (!m.displayValue.empty()) {
      text(p + ".displayValue", m.displayValue, false);
      try {
        Measure decoded = measure_from_callout(m.displayValue);
        decoded.feature = m.feature;
        if (!(decoded == m)) {
          fail(p + ".displayValue", "does not decompose to the record's fields");
        }
      } catch (const Error& e) {
        fail(p + ".displayValue", e.detail());
      }
    }
  }

  void thread(const std::string& p, const ThreadSpec& t) {
    quantity(p + ".quantity", t.quantity);
    if (!is_thread_designation(t.designation)) {
      fail(p + ".designation", "'" + t.designation + "' is not a thread designation");
    }
    if (!t.fitClass.empty() && !is_fit_class(t.fitClass)) {
      fail(p + ".fitClass", "'" + t.fitClass + "' is not a fit class");
    }
    if (!t.depthQualifier.empty() && t.depthQualifier != "THRU" &&
        !is_positive_decimal(t.depthQualifier)) {
      fail(p + ".depthQualifier", "must be THRU or a depth value");
    }
  }

  void roughness(const std::string& p, const SurfaceRoughnessSpec& s) {
    if (!is_roughness_value(s.parameter, s.value)) {
      fail(p + ".value", s.parameter == RoughnessParameter::Ra
                             ? "Ra value must be a positive decimal in µm"
                             : "N-grade must be N1 to N12");
    }
  }

  void radius(const std::string& p, const RadiusSpec& r) {
    quantity(p + ".quantity", r.quantity);
    if (!is_radius_value(r.value)) {
      fail(p + ".value", "'" + r.value + "' is not R<positive decimal>");
    }
  }

  void notes(const std::string& p, const NotesBlock& n) {
    if (n.lines.empty()) fail(p, "at least one line is required");
    for (std::size_t i = 0; i < n.lines.size(); ++i) {
      text(p + "." + std::to_string(i + 1), n.lines[i], true);
    }
  }

  void title_block(const std::string& p, const TitleBlock& t) {
    std::set<std::string> keys;
    for (const auto& [k, v] : t.entries) {
      text(p + "." + k, k, true);
      if (k.find(':') != std::string::npos) fail(p + "." + k, "key contains ':'");
      if (!keys.insert(k).second) fail(p + "." + k, "duplicate key");
      text(p + "." + k, v, false);
    }
  }

 private:
  std::vector<Violation>& out_;
};

}  // namespace

ValidationResult validate_record(Category category,
                                 const AnnotationRecord& record) {
  if (category_of(record) != category) {
    throw Error(ErrorCode::CategoryMismatch,
                "record of type " + std::string(category_name(category_of(record))) +
                    " given for category " + std::string(category_name(category)));
  }
  ValidationResult result;
  Checker c(result.violations);
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GdtFrames>) {
          if (r.frames.empty()) c.fail("gdts", "at least one frame is required");
          c.frames("gdts", r.frames);
        } else if constexpr (std::is_same_v<T, Measure>) {
          c.measure("measures.1", r);
        } else if constexpr (std::is_same_v<T, ThreadSpec>) {
          c.thread("threads.1", r);
        } else if constexpr (std::is_same_v<T, SurfaceRoughnessSpec>) {
          c.roughness("surfaceRoughness.1", r);
        } else if constexpr (std::is_same_v<T, RadiusSpec>) {
          c.radius("radii.1", r);
        } else if constexpr (std::is_same_v<T, MaterialSpec>) {
          c.text("material.designation", r.designation, true);
        } else if constexpr (std::is_same_v<T, GeneralToleranceSpec>) {
          c.text("generalTolerance.text", r.text, true);
        } else if constexpr (std::is_same_v<T, NotesBlock>) {
          c.notes("notes", r);
        } else if constexpr (std::is_same_v<T, TitleBlock>) {
          c.title_block("titleBlock", r);
        }
      },
      record);
  return result;
}

ValidationResult validate_document(const DrawingDocument& doc) {
  ValidationResult result;
  Checker c(result.violations);
  c.frames("gdts", doc.gdts);
  for (std::size_t i = 0; i < doc.measures.size(); ++i) {
    c.measure("measures." + std::to_string(i + 1), doc.measures[i]);
  }
  for (std::size_t i = 0; i < doc.threads.size(); ++i) {
    c.thread("threads." + std::to_string(i + 1), doc.threads[i]);
  }
  for (std::size_t i = 0; i < doc.surfaceRoughness.size(); ++i) {
    c.roughness("surfaceRoughness." + std::to_string(i + 1),
                doc.surfaceRoughness[i]);
  }
  for (std::size_t i = 0; i < doc.radii.size(); ++i) {
    c.radius("radii." + std::to_string(i + 1), doc.radii[i]);
  }
  if (doc.material) c.text("material.designation", doc.material->designation, true);
  if (doc.generalTolerance) {
    c.text("generalTolerance.text", doc.generalTolerance->text, true);
  }
  if (doc.titleBlock) c.title_block("titleBlock", *doc.titleBlock);
  if (doc.notes) c.notes("notes", *doc.notes);
  return result;
}

void add_record(DrawingDocument& doc, const AnnotationRecord& record) {
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GdtFrames>) {
          for (GdtFrame f : r.frames) {
            f.index = static_cast<int>(doc.gdts.size()) + 1;
            doc.gdts.push_back(std::move(f));
          }
        } else if constexpr (std::is_same_v<T, Measure>) {
          doc.measures.push_back(r);
        } else if constexpr (std::is_same_v<T, ThreadSpec>) {
          doc.threads.push_back(r);
        } else if constexpr (std::is_same_v<T, SurfaceRoughnessSpec>) {
          doc.surfaceRoughness.push_back(r);
        } else if constexpr (std::is_same_v<T, RadiusSpec>) {
          doc.radii.push_back(r);
        } else if constexpr (std::is_same_v<T, MaterialSpec>) {
          doc.material = r;
        } else if constexpr (std::is_same_v<T, GeneralToleranceSpec>) {
          doc.generalTolerance = r;
        } else if constexpr (std::is_same_v<T, NotesBlock>) {
          if (!doc.notes) doc.notes = NotesBlock{};
          doc.notes->lines.insert(doc.notes->lines.end(), r.lines.begin(),
                                  r.lines.end());
        } else if constexpr (std::is_same_v<T, TitleBlock>) {
          if (!doc.titleBlock) doc.titleBlock = TitleBlock{};
          for (const auto& e : r.entries) {
            bool replaced = false;
            for (auto& existing : doc.titleBlock->entries) {
              if (existing.first == e.first) {
                existing.second = e.second;
                replaced = true;
              }
            }
            if (!replaced) doc.titleBlock->entries.push_back(e);
          }
        }
      },
      record);
}

}  // namespace drawparse
