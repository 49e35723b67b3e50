// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "drawparse/decide.hpp"
#include "drawparse/notation.hpp"

namespace drawparse {
namespace {

using Json = nlohmann::ordered_json;
using Value = std::variant<std::monostate, double, std::string, std::vector<std::string>>;

constexpr std::string_view kOps[] = {"eq",  "lt", "gt",      "le",           "ge", "in-range",
                                      "it-grade-in", "material-class", "in", "present",
                                      "contains-all", "any"};

constexpr std::string_view kFields[] = {
    "featureType", "source",   "nominalDiameter",     "toleranceBand", "itGrade",
    "roughnessRa", "material", "quantity",            "positionalTolerance",
    "datums",      "threadDesignation", "depthQualifier"};

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaViolation, msg, path);
}

template <class T>
Value number_or_absent(const std::optional<T>& v) {
  if (!v) return std::monostate{};
  return static_cast<double>(*v);
}

Value text_or_absent(const std::string& s) {
  if (s.empty()) return std::monostate{};
  return s;
}

Value field_value(const FeatureContext& ctx, std::string_view field) {
  if (field == "featureType") return std::string(feature_type_name(ctx.featureType));
  if (field == "source") return text_or_absent(ctx.source);
  if (field == "nominalDiameter") return number_or_absent(ctx.nominalDiameter);
  if (field == "toleranceBand") return number_or_absent(ctx.toleranceBand);
  if (field == "itGrade") return number_or_absent(ctx.itGrade);
  if (field == "roughnessRa") return number_or_absent(ctx.roughnessRa);
  if (field == "material") return text_or_absent(ctx.material);
  if (field == "quantity") return number_or_absent(ctx.quantity);
  if (field == "positionalTolerance") return number_or_absent(ctx.positionalTolerance);
  if (field == "datums") {
    if (ctx.datums.empty()) return std::monostate{};
    return ctx.datums;
  }
  if (field == "threadDesignation") return text_or_absent(ctx.threadDesignation);
  if (field == "depthQualifier") return text_or_absent(ctx.depthQualifier);
  return std::monostate{};
}

std::string number_text(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string value_text(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return "absent";
  if (const auto* d = std::get_if<double>(&v)) return number_text(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  std::string out;
  for (const auto& s : std::get<std::vector<std::string>>(v)) {
    if (!out.empty()) out += ",";
    out += s;
  }
  return out;
}

std::string list_text(const std::vector<std::string>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + values[i];
  return out + "]";
}

Condition parse_condition(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "condition must be an object");
  Condition c;
  auto str = [&](const char* key) -> std::string {
    auto it = j.find(key);
    if (it == j.end()) return {};
    if (!it->is_string()) bad(path + "." + key, "must be a string");
    return it->get<std::string>();
  };
  auto num = [&](const char* key) -> std::optional<double> {
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (!it->is_number()) bad(path + "." + key, "must be a number");
    return it->get<double>();
  };
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> known = {"field", "op", "value", "values", "min", "max",
                                                "conditions"};
    if (!known.count(key)) bad(path + "." + key, "unknown condition key");
  }
  c.op = str("op");
  if (std::find(std::begin(kOps), std::end(kOps), c.op) == std::end(kOps)) {
    bad(path + ".op", "unknown operator '" + c.op + "'");
  }
  c.field = str("field");
  if (c.field.empty()) {
    if (c.op == "it-grade-in") c.field = "itGrade";
    if (c.op == "material-class") c.field = "material";
  }
  if (c.op == "any") {
    auto it = j.find("conditions");
    if (it == j.end() || !it->is_array() || it->empty()) {
      bad(path + ".conditions", "'any' needs a non-empty condition list");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      c.any.push_back(parse_condition((*it)[i], path + ".conditions." + std::to_string(i)));
    }
    return c;
  }
  if (std::find(std::begin(kFields), std::end(kFields), c.field) == std::end(kFields)) {
    bad(path + ".field", "unknown field '" + c.field + "'");
  }
  if (auto it = j.find("value"); it != j.end()) {
    if (it->is_number()) {
      c.number = it->get<double>();
    } else if (it->is_string()) {
      c.text = it->get<std::string>();
    } else {
      bad(path + ".value", "must be a number or string");
    }
  }
  if (auto it = j.find("values"); it != j.end()) {
    if (!it->is_array()) bad(path + ".values", "must be a list");
    for (const auto& v : *it) {
      if (!v.is_string()) bad(path + ".values", "entries must be strings");
      c.list.push_back(v.get<std::string>());
    }
  }
  c.min = num("min");
  c.max = num("max");
  const bool compare = c.op == "lt" || c.op == "gt" || c.op == "le" || c.op == "ge";
  if (compare && !c.number) bad(path + ".value", "'" + c.op + "' needs a numeric value");
  if (c.op == "eq" && !c.number && c.text.empty()) bad(path + ".value", "'eq' needs a value");
  if ((c.op == "in-range" || c.op == "it-grade-in") && (!c.min || !c.max || *c.min > *c.max)) {
    bad(path, "'" + c.op + "' needs min <= max");
  }
  if (c.op == "material-class" && c.text.empty()) bad(path + ".value", "needs a class name");
  if ((c.op == "in" || c.op == "contains-all") && c.list.empty()) {
    bad(path + ".values", "'" + c.op + "' needs a non-empty list");
  }
  return c;
}

ToolQuery parse_query(const Json& j, const std::string& path) {
  ToolQuery q;
  if (j.is_string()) {
    q.name = j.get<std::string>();
    return q;
  }
  if (!j.is_object()) bad(path, "tool query must be an object or a name");
  for (const auto& [key, v] : j.items()) {
    if (!v.is_string()) bad(path + "." + key, "must be a string");
    if (key == "name") {
      q.name = v.get<std::string>();
    } else if (key == "toolType") {
      q.toolType = v.get<std::string>();
    } else if (key == "sizeSpec") {
      q.sizeSpec = v.get<std::string>();
    } else if (key == "materialClass") {
      q.materialClass = v.get<std::string>();
    } else {
      bad(path + "." + key, "unknown tool query key");
    }
  }
  if (q.name.empty()) q.name = q.toolType;
  if (q.name.empty()) bad(path + ".name", "tool query needs a name or toolType");
  return q;
}

bool datum_list_contains(const std::vector<std::string>& have, const std::string& want) {
  return std::any_of(have.begin(), have.end(), [&](const std::string& d) {
    return d == want || notation::datum_base(d) == notation::datum_base(want);
  });
}

void json_optional(Json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

Json feature_json(const FeatureContext& f) {
  Json j;
  j["featureType"] = std::string(feature_type_name(f.featureType));
  j["source"] = f.source;
  json_optional(j, "nominalDiameter", f.nominalDiameter);
  json_optional(j, "toleranceBand", f.toleranceBand);
  if (f.itGrade) j["itGrade"] = *f.itGrade;
  json_optional(j, "roughnessRa", f.roughnessRa);
  j["material"] = f.material;
  if (f.quantity) j["quantity"] = *f.quantity;
  json_optional(j, "positionalTolerance", f.positionalTolerance);
  if (!f.datums.empty()) j["datums"] = f.datums;
  if (!f.threadDesignation.empty()) j["threadDesignation"] = f.threadDesignation;
  if (!f.depthQualifier.empty()) j["depthQualifier"] = f.depthQualifier;
  return j;
}

Json cutting_json(const CuttingData& c) {
  return {{"toolId", c.toolId},
          {"material", c.workpieceMaterial},
          {"speed", c.speedText + " m/min"},
          {"feed", c.feedText + " mm/rev"}};
}

}  // namespace

RuleSet parse_rules(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  if (!j.is_array()) bad("", "rule file must be a JSON list");
  RuleSet set;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& r = j[i];
    const std::string path = std::to_string(i);
    if (!r.is_object()) bad(path, "rule must be an object");
    Rule rule;
    for (const auto& [key, _] : r.items()) {
      static const std::set<std::string> known = {"id", "description", "conditions",
                                                  "operations", "toolQueries"};
      if (!known.count(key)) bad(path + "." + key, "unknown rule key");
    }
    if (!r.contains("id") || !r["id"].is_string() || r["id"].get<std::string>().empty()) {
      bad(path + ".id", "rule needs a non-empty string id");
    }
    rule.id = r["id"].get<std::string>();
    if (!ids.insert(rule.id).second) bad(path + ".id", "duplicate rule id '" + rule.id + "'");
    if (r.contains("description")) {
      if (!r["description"].is_string()) bad(path + ".description", "must be a string");
      rule.description = r["description"].get<std::string>();
    }
    const Json& conds = r.value("conditions", Json::array());
    if (!conds.is_array() || conds.empty()) bad(path + ".conditions", "need at least one condition");
    for (std::size_t k = 0; k < conds.size(); ++k) {
      rule.conditions.push_back(parse_condition(conds[k], path + ".conditions." + std::to_string(k)));
    }
    const Json& ops = r.value("operations", Json::array());
    if (!ops.is_array() || ops.empty()) bad(path + ".operations", "need at least one operation");
    for (const auto& op : ops) {
      if (!op.is_string() || op.get<std::string>().empty()) {
        bad(path + ".operations", "operations must be non-empty strings");
      }
      rule.operations.push_back(op.get<std::string>());
    }
    const Json& queries = r.value("toolQueries", Json::array());
    if (!queries.is_array()) bad(path + ".toolQueries", "must be a list");
    for (std::size_t k = 0; k < queries.size(); ++k) {
      rule.toolQueries.push_back(parse_query(queries[k], path + ".toolQueries." + std::to_string(k)));
    }
    set.rules.push_back(std::move(rule));
  }
  return set;
}

RuleSet load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str());
}

bool evaluate_condition(const Condition& c, const FeatureContext& ctx) {
  if (c.op == "any") {
    return std::any_of(c.any.begin(), c.any.end(),
                       [&](const Condition& sub) { return evaluate_condition(sub, ctx); });
  }
  const Value v = field_value(ctx, c.field);
  if (c.op == "present") return !std::holds_alternative<std::monostate>(v);
  const auto* num = std::get_if<double>(&v);
  const auto* str = std::get_if<std::string>(&v);
  if (c.op == "eq") {
    if (c.number) return num && std::fabs(*num - *c.number) <= 1e-9;
    return str && *str == c.text;
  }
  if (c.op == "lt") return num && *num < *c.number;
  if (c.op == "gt") return num && *num > *c.number;
  if (c.op == "le") return num && *num <= *c.number + 1e-12;
  if (c.op == "ge") return num && *num + 1e-12 >= *c.number;
  if (c.op == "in-range" || c.op == "it-grade-in") {
    return num && *num + 1e-12 >= *c.min && *num <= *c.max + 1e-12;
  }
  if (c.op == "material-class") {
    return str && material_class(*str) == material_class(c.text);
  }
  if (c.op == "in") {
    if (str) return std::find(c.list.begin(), c.list.end(), *str) != c.list.end();
    if (num) {
      return std::any_of(c.list.begin(), c.list.end(),
                         [&](const std::string& s) { return s == number_text(*num); });
    }
    return false;
  }
  if (c.op == "contains-all") {
    const auto* list = std::get_if<std::vector<std::string>>(&v);
    return list && std::all_of(c.list.begin(), c.list.end(), [&](const std::string& want) {
             return datum_list_contains(*list, want);
           });
  }
  return false;
}

std::string describe_condition(const Condition& c) {
  if (c.op == "any") {
    std::string out = "any(";
    for (std::size_t i = 0; i < c.any.size(); ++i) {
      out += (i ? " | " : "") + describe_condition(c.any[i]);
    }
    return out + ")";
  }
  if (c.op == "present") return c.field + " present";
  if (c.op == "in-range" || c.op == "it-grade-in") {
    return c.field + " in [" + number_text(*c.min) + ", " + number_text(*c.max) + "]";
  }
  if (c.op == "in" || c.op == "contains-all") return c.field + " " + c.op + " " + list_text(c.list);
  if (c.op == "material-class") return "material class of " + c.field + " is " + c.text;
  static const std::map<std::string, std::string> symbols = {
      {"eq", "=="}, {"lt", "<"}, {"gt", ">"}, {"le", "<="}, {"ge", ">="}};
  return c.field + " " + symbols.at(c.op) + " " + (c.number ? number_text(*c.number) : c.text);
}

std::vector<const Rule*> match_rules(const FeatureContext& ctx, const RuleSet& rules,
                                     std::vector<TraceEntry>* trace) {
  std::vector<const Rule*> matched;
  for (const Rule& rule : rules.rules) {
    bool all = true;
    for (const Condition& c : rule.conditions) {
      const bool ok = evaluate_condition(c, ctx);
      all = all && ok;
      if (trace) {
        trace->push_back({rule.id, describe_condition(c), ok,
                          c.op == "any" ? std::string() : value_text(field_value(ctx, c.field))});
      }
    }
    if (all) matched.push_back(&rule);
  }
  return matched;
}

Recommendation recommend(const FeatureContext& ctx, const RuleSet& rules,
                         const ToolDatabase& db) {
  Recommendation rec;
  rec.feature = ctx;
  const auto matched = match_rules(ctx, rules, &rec.trace);
  std::set<std::string> seenOps;
  std::set<std::string> seenTools;
  std::set<std::string> seenParams;
  for (const Rule* rule : matched) {
    rec.matchedRuleIds.push_back(rule->id);
    for (const auto& op : rule->operations) {
      if (seenOps.insert(op).second) rec.operations.push_back(op);
    }
    for (const auto& q : rule->toolQueries) {
      if (!seenTools.insert(q.name).second) continue;
      ToolSelection sel;
      sel.name = q.name;
      sel.ruleId = rule->id;
      if (q.toolType.empty()) {
        sel.gap = "no database query for '" + q.name + "'";
        rec.tools.push_back(std::move(sel));
        continue;
      }
      const std::string material = q.materialClass.empty() ? ctx.material : q.materialClass;
      try {
        sel.tool = query_tool(db, q.toolType, q.sizeSpec, material);
      } catch (const Error& e) {
        sel.gap = e.what();
        rec.tools.push_back(std::move(sel));
        continue;
      }
      try {
        sel.parameters = query_cutting(db, sel.tool->toolId, ctx.material);
        if (seenParams.insert(sel.tool->toolId).second) rec.parameters.push_back(*sel.parameters);
      } catch (const Error& e) {
        sel.gap = e.what();
      }
      rec.tools.push_back(std::move(sel));
    }
  }
  return rec;
}

std::string recommendations_json(const std::vector<Recommendation>& recs) {
  Json out = Json::array();
  for (const auto& r : recs) {
    Json tools = Json::array();
    for (const auto& t : r.tools) {
      Json tj{{"name", t.name}, {"rule", t.ruleId}, {"resolved", t.tool.has_value() && t.gap.empty()}};
      if (t.tool) {
        tj["toolId"] = t.tool->toolId;
        tj["toolType"] = t.tool->toolType;
        tj["size"] = t.tool->sizeSpec;
        tj["toolMaterial"] = t.tool->material;
        if (t.tool->coating) tj["coating"] = *t.tool->coating;
        tj["isoCode"] = t.tool->isoCode;
      }
      if (t.parameters) tj["parameters"] = cutting_json(*t.parameters);
      if (!t.gap.empty()) tj["gap"] = t.gap;
      tools.push_back(std::move(tj));
    }
    Json params = Json::array();
    for (const auto& p : r.parameters) params.push_back(cutting_json(p));
    Json trace = Json::array();
    for (const auto& e : r.trace) {
      Json tj{{"rule", e.ruleId}, {"condition", e.condition}, {"result", e.result}};
      if (!e.actual.empty()) tj["actual"] = e.actual;
      trace.push_back(std::move(tj));
    }
    out.push_back(Json{{"feature", feature_json(r.feature)},
                       {"matchedRules", r.matchedRuleIds},
                       {"operations", r.operations},
                       {"tools", tools},
                       {"parameters", params},
                       {"trace", trace}});
  }
  return out.dump(2) + "\n";
}

}  // namespace drawparse
