#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "meinardus/weights.hpp"

// JSON (de)serialization of weight models.  The schema is small on
// purpose: {"kind": "constant", "b": ...} | {"kind": "linear"} |
// {"kind": "power", "C": ..., "nu": ...} |
// {"kind": "table", "values": [...], "tail": {"C": ..., "nu": ...}}.

namespace meinardus {

inline WeightModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("model spec: expected an object with a \"kind\" field");
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return WeightModel::constant(j.at("b").get<double>());
    if (kind == "linear") return WeightModel::linear();
    if (kind == "power")
      return WeightModel::power(j.at("C").get<double>(), j.at("nu").get<double>());
    if (kind == "table") {
      if (!j.contains("tail"))
        throw std::invalid_argument("model spec: table models must declare a power tail");
      const auto& t = j.at("tail");
      return WeightModel::table(j.at("values").get<std::vector<double>>(),
                                PowerTail{t.at("C").get<double>(), t.at("nu").get<double>()});
    }
    throw std::invalid_argument("model spec: unknown kind \"" + kind + "\"");
  } catch (const nlohmann::json::exception& e) {
    // missing or mistyped keys are caller errors, not I/O surprises
    throw std::invalid_argument(std::string("model spec: ") + e.what());
  }
}

inline WeightModel model_from_json_text(const std::string& text) {
  return model_from_json(nlohmann::json::parse(text));
}

inline nlohmann::json model_to_json(const WeightModel& m) {
  nlohmann::json j;
  switch (m.kind()) {
    case WeightKind::Constant:
      j["kind"] = "constant";
      j["b"] = m.constant_b();
      break;
    case WeightKind::Linear:
      j["kind"] = "linear";
      break;
    case WeightKind::Power:
      j["kind"] = "power";
      j["C"] = m.residue();
      j["nu"] = m.rho();
      break;
    case WeightKind::Table:
      j["kind"] = "table";
      j["values"] = m.table_values();
      j["tail"] = {{"C", m.tail().C}, {"nu", m.tail().nu}};
      break;
  }
  return j;
}

}  // namespace meinardus
