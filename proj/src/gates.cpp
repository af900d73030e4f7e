#include "erlanga/experiment.hpp"

#include <json.hpp>

namespace erlanga {

GateOutcome check(const std::string& report_json, const std::string& gates_json)
{
  nlohmann::json report;
  nlohmann::json gates;
  try {
    report = nlohmann::json::parse(report_json);
    gates = nlohmann::json::parse(gates_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!report.contains("metrics") || !report["metrics"].is_object()) {
    throw std::invalid_argument("report has no \"metrics\" object");
  }
  if (!gates.contains("gates") || !gates["gates"].is_object()) {
    throw std::invalid_argument("gate file has no \"gates\" object");
  }
  const auto& metrics = report["metrics"];

  std::vector<std::string> missing;
  for (const auto& [name, limit] : gates["gates"].items()) {
    if (!limit.is_number()) {
      throw std::invalid_argument("gate '" + name + "' limit is not a number");
    }
    if (!metrics.contains(name)) {
      missing.push_back(name);
    }
  }
  if (!missing.empty()) {
    std::string msg = "gates name metrics absent from the report:";
    for (const auto& m : missing) {
      msg += ' ' + m;
    }
    throw std::invalid_argument(msg);
  }

  GateOutcome outcome;
  for (const auto& [name, limit] : gates["gates"].items()) {
    const auto& value = metrics[name];
    // null encodes a non-finite metric, which never passes.
    if (!value.is_number() || !(value.get<double>() <= limit.get<double>())) {
      outcome.failed.push_back(name);
    }
  }
  return outcome;
}

}  // namespace erlanga
