// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>

#include "drawparse/eval.hpp"
#include "drawparse/notation.hpp"

namespace drawparse {
namespace {

class Builder {
 public:
  void add(std::string path, std::string_view value) {
    std::string v = normalize_field_value(value);
    if (v.empty()) return;
    // Duplicate paths (repeated title-block keys) get a #n suffix.
    std::string p = path;
    for (int n = 2; seen(p); ++n) p = path + "#" + std::to_string(n);
    set_.pairs.emplace_back(std::move(p), std::move(v));
  }

  FieldSet finish() {
    std::sort(set_.pairs.begin(), set_.pairs.end());
    return std::move(set_);
  }

 private:
  bool seen(const std::string& p) const {
    return std::any_of(set_.pairs.begin(), set_.pairs.end(),
                       [&](const auto& kv) { return kv.first == p; });
  }
  FieldSet set_;
};

std::string count_text(const std::optional<int>& q) {
  return q ? std::to_string(*q) : std::string();
}

std::string prefix(std::string_view base, std::size_t index) {
  return std::string(base) + "." + std::to_string(index) + ".";
}

void add_frame(Builder& b, const GdtFrame& f, std::size_t index) {
  const std::string p = prefix("gdts", index);
  b.add(p + "geometricCharacteristic", format_codepoint_escape(f.characteristic));
  b.add(p + "tolerance", f.tolerance);
  std::string datums;
  for (const auto& d : f.datums) {
    if (!datums.empty()) datums += ",";
    datums += notation::trim(d);
  }
  b.add(p + "datumReference", datums);
}

void add_measure(Builder& b, const Measure& m, std::size_t index) {
  const std::string p = prefix("measures", index);
  b.add(p + "quantity", count_text(m.quantity));
  b.add(p + "nominalValue", m.nominalValue);
  b.add(p + "tolerance", m.tolerance);
  b.add(p + "upperLimit", m.upperLimit);
  b.add(p + "lowerLimit", m.lowerLimit);
  b.add(p + "feature", m.feature);
  b.add(p + "displayValue", m.displayValue);
}

void add_thread(Builder& b, const ThreadSpec& t, std::size_t index) {
  const std::string p = prefix("threads", index);
  b.add(p + "quantity", count_text(t.quantity));
  b.add(p + "designation", t.designation);
  b.add(p + "fitClass", t.fitClass);
  b.add(p + "depthQualifier", t.depthQualifier);
}

void add_roughness(Builder& b, const SurfaceRoughnessSpec& s, std::size_t index) {
  const std::string p = prefix("surfaceRoughness", index);
  b.add(p + "parameter", s.parameter == RoughnessParameter::Ra ? "Ra" : "N-grade");
  b.add(p + "value", s.value);
}

void add_radius(Builder& b, const RadiusSpec& r, std::size_t index) {
  const std::string p = prefix("radii", index);
  b.add(p + "quantity", count_text(r.quantity));
  b.add(p + "value", r.value);
}

void add_notes(Builder& b, const NotesBlock& n) {
  for (std::size_t i = 0; i < n.lines.size(); ++i) {
    b.add("notes.lines." + std::to_string(i + 1), n.lines[i]);
  }
}

void add_title(Builder& b, const TitleBlock& t) {
  for (const auto& [k, v] : t.entries) b.add("titleBlock." + notation::trim(k), v);
}

}  // namespace

const std::string* FieldSet::find(std::string_view path) const noexcept {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), path,
                             [](const auto& kv, std::string_view p) { return kv.first < p; });
  if (it == pairs.end() || it->first != path) return nullptr;
  return &it->second;
}

std::string normalize_field_value(std::string_view value) {
  std::string s = notation::trim(value);
  static constexpr std::string_view kLong = "THROUGH";
  std::size_t pos = 0;
  while ((pos = s.find(kLong, pos)) != std::string::npos) {
    const bool startOk = pos == 0 || !std::isalnum(static_cast<unsigned char>(s[pos - 1]));
    const std::size_t end = pos + kLong.size();
    const bool endOk = end == s.size() || !std::isalnum(static_cast<unsigned char>(s[end]));
    if (startOk && endOk) {
      s.replace(pos, kLong.size(), "THRU");
      pos += 4;
    } else {
      pos = end;
    }
  }
  return s;
}

FieldSet flatten(const AnnotationRecord& record) {
  Builder b;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GdtFrames>) {
          for (const auto& f : r.frames) add_frame(b, f, static_cast<std::size_t>(f.index));
        } else if constexpr (std::is_same_v<T, Measure>) {
          add_measure(b, r, 1);
        } else if constexpr (std::is_same_v<T, ThreadSpec>) {
          add_thread(b, r, 1);
        } else if constexpr (std::is_same_v<T, SurfaceRoughnessSpec>) {
          add_roughness(b, r, 1);
        } else if constexpr (std::is_same_v<T, RadiusSpec>) {
          add_radius(b, r, 1);
        } else if constexpr (std::is_same_v<T, MaterialSpec>) {
          b.add("material.designation", r.designation);
        } else if constexpr (std::is_same_v<T, GeneralToleranceSpec>) {
          b.add("generalTolerance.text", r.text);
        } else if constexpr (std::is_same_v<T, NotesBlock>) {
          add_notes(b, r);
        } else if constexpr (std::is_same_v<T, TitleBlock>) {
          add_title(b, r);
        }
      },
      record);
  return b.finish();
}

std::array<FieldSet, kCategoryCount> flatten_document(const DrawingDocument& doc) {
  std::array<Builder, kCategoryCount> b;
  auto slot = [&](Category c) -> Builder& { return b[static_cast<std::size_t>(ordinal(c))]; };
  for (const auto& f : doc.gdts) add_frame(slot(Category::GDT), f, static_cast<std::size_t>(f.index));
  for (std::size_t i = 0; i < doc.measures.size(); ++i) {
    add_measure(slot(Category::Measure), doc.measures[i], i + 1);
  }
  for (std::size_t i = 0; i < doc.threads.size(); ++i) {
    add_thread(slot(Category::Thread), doc.threads[i], i + 1);
  }
  for (std::size_t i = 0; i < doc.surfaceRoughness.size(); ++i) {
    add_roughness(slot(Category::SurfaceRoughness), doc.surfaceRoughness[i], i + 1);
  }
  for (std::size_t i = 0; i < doc.radii.size(); ++i) {
    add_radius(slot(Category::Radius), doc.radii[i], i + 1);
  }
  if (doc.material) slot(Category::Material).add("material.designation", doc.material->designation);
  if (doc.generalTolerance) {
    slot(Category::GeneralTolerance).add("generalTolerance.text", doc.generalTolerance->text);
  }
  if (doc.notes) add_notes(slot(Category::Note), *doc.notes);
  if (doc.titleBlock) add_title(slot(Category::TitleBlock), *doc.titleBlock);
  std::array<FieldSet, kCategoryCount> out;
  for (std::size_t i = 0; i < kCategoryCount; ++i) out[i] = b[i].finish();
  return out;
}

MatchCounts compare(const FieldSet& pred, const FieldSet& gt) {
  MatchCounts c;
  for (const auto& [path, value] : pred.pairs) {
    const std::string* truth = gt.find(path);
    if (truth && normalize_field_value(*truth) == normalize_field_value(value)) ++c.tp;
  }
  c.fp = pred.size() - c.tp;
  c.fn = gt.size() - c.tp;
  return c;
}

}  // namespace drawparse
