#pragma once

// JSON problem descriptions, schema version 1:
//
//   {"schema_version": 1,
//    "set":     {"kind": "interval", "params": {"a": -1, "b": 1}},
//    "weight":  {"kind": "power", "params": {"coeff": 1, "power": 2, "shift": 0}},
//    "measure": {"kind": "lebesgue", "params": {"nodes": 64}}}
//
// Only "set" is required. Points are arrays of coordinates; a coordinate is a
// number or a [re, im] pair. Validation errors carry a JSON pointer.

#include <json.hpp>

#include <optional>
#include <string>

#include "vdmlab/domain_models.hpp"

namespace vdmlab {

inline constexpr int kSchemaVersion = 1;

struct MeasureSpec {
  std::string kind;  // arc, lebesgue, arcsine, atomic, uniform
  int nodes = 0;     // 0: chosen by the consumer for its degree
  nlohmann::json params = nlohmann::json::object();
};

struct Problem {
  SetModel set;
  WeightModel weight = WeightModel::unit_weight();
  std::optional<MeasureSpec> measure;
  nlohmann::json source;
};

Problem parse_problem(const nlohmann::json& doc);

/// Builds the measure on `set`; `default_nodes` replaces nodes = 0.
MeasureModel build_measure(const MeasureSpec& spec, const SetModel& set, int default_nodes);

/// "NAME" or "NAME:key=value,key=value" into {"kind": NAME, "params": {...}}.
/// Values parse as numbers or true/false when possible, else strings.
nlohmann::json shorthand_to_json(const std::string& text);

Point parse_point(const nlohmann::json& j, const std::string& pointer);

}  // namespace vdmlab
