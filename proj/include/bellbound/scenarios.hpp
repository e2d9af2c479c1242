#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bellbound/analysis.hpp"
#include "bellbound/bounds.hpp"
#include "bellbound/core.hpp"
#include "bellbound/engine.hpp"
#include "bellbound/models.hpp"

namespace bellbound {

struct ExpectedVerdict {
  LabelingScheme scheme;
  int bound_min;
  Verdict verdict;
};

/// A named, fully specified experiment: expression, stations, schedule
/// style, model, defaults, and the verdicts a default-seed run must
/// reproduce.
struct Scenario {
  std::string name;
  std::string description;
  std::vector<Setting> settings;
  std::vector<StationId> stations;
  Expression expr;
  GroupingKind grouping = GroupingKind::AllTermsEachTrial;
  RunConfig defaults;
  std::function<std::shared_ptr<const OutcomeModel>()> make_model;
  std::vector<ExpectedVerdict> expected;
};

struct SchemeAssessment {
  LabelingScheme scheme;
  BoundResult bound;
  CyclicityReport cyclicity;
  VerdictRecord verdict;
};

struct ScenarioReport {
  std::string scenario;
  RunConfig config;
  CorrelationReport stats;
  std::vector<SchemeAssessment> schemes;  // all schemes, coarsest first
  TrialLog log;
};

struct ScenarioOverrides {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<TermRotation> rotation;
  unsigned threads = 1;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

/// Registry listing in stable (registration) order.
std::vector<ScenarioInfo> list_scenarios();

/// Throws std::invalid_argument for unknown names.
const Scenario& find_scenario(const std::string& name);

ScenarioReport run_scenario(const std::string& name,
                            const ScenarioOverrides& overrides = {});

/// Runs an already-resolved definition (used for file-defined experiments).
ScenarioReport run_experiment(const std::string& label,
                              const std::vector<Setting>& settings,
                              const Expression& expr, const Schedule& schedule,
                              const OutcomeModel& model,
                              const RunConfig& config);

}  // namespace bellbound
