#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "bellbound/analysis.hpp"
#include "bellbound/bounds.hpp"
#include "bellbound/core.hpp"
#include "bellbound/engine.hpp"
#include "bellbound/feasibility.hpp"
#include "bellbound/models.hpp"
#include "bellbound/scenarios.hpp"

namespace bellbound {

// Field names are part of the on-disk contract; see docs/formats.md and the
// golden files under tests/golden.
using Json = nlohmann::ordered_json;

Json expression_to_json(const Expression& expr);
Expression expression_from_json(const Json& j);

Json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& j);

Json log_to_json(const TrialLog& log);
TrialLog log_from_json(const Json& j);

Json bound_to_json(const BoundResult& bound);
Json cyclicity_to_json(const CyclicityReport& report);
Json feasibility_to_json(const FeasibilityVerdict& verdict);
Json correlation_report_to_json(const CorrelationReport& report);
Json verdict_to_json(const VerdictRecord& record);
Json scenario_report_to_json(const ScenarioReport& report,
                             bool include_log = false);

/// A parsed experiment definition document (sections: settings, stations,
/// expression, schedule, model).
struct ExperimentDef {
  std::string name;
  std::vector<Setting> settings;
  std::vector<StationId> stations;
  Expression expr;
  Schedule schedule;
  RunConfig config;
  std::shared_ptr<const OutcomeModel> model;
};

Json settings_to_json(const std::vector<Setting>& settings);
std::vector<Setting> settings_from_json(const Json& j);

std::shared_ptr<const OutcomeModel> model_from_json(const Json& j);

/// Parses and validates a full experiment document.
/// Throws std::invalid_argument with the offending section on errors.
ExperimentDef experiment_from_json(const Json& j);

}  // namespace bellbound
