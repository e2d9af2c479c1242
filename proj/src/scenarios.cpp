#include "bellbound/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace bellbound {

namespace {

// Three unit vectors pairwise 60 degrees apart (a.b = 1/2 for each pair):
// a cone of half-angle acos(sqrt(2/3)) around z at azimuths 0, 120, 240.
std::vector<Setting> singlet_settings() {
  const double r = std::sqrt(1.0 / 3.0);
  const double z = std::sqrt(2.0 / 3.0);
  const double s = r * std::sqrt(3.0) / 2.0;
  return {
      Setting::make("a", Vec3{r, 0.0, z}),
      Setting::make("b", Vec3{-r / 2.0, s, z}),
      Setting::make("c", Vec3{-r / 2.0, -s, z}),
  };
}

std::vector<Setting> plain_settings() {
  return {Setting::make("a"), Setting::make("b"), Setting::make("c")};
}

Expression triple_station_expression() {
  Expression expr;
  expr.terms = {
      Term{{{"a", "S1"}, {"b", "S2"}}},
      Term{{{"a", "S1"}, {"c", "S3"}}},
      Term{{{"b", "S2"}, {"c", "S3"}}},
  };
  return expr;
}

std::vector<Scenario> build_registry() {
  std::vector<Scenario> registry;

  {
    Scenario s;
    s.name = "three-doctors";
    s.description =
        "Three stations each examine one fixed patient type per date; all "
        "three pair products are formed from the same date's exams.";
    s.settings = plain_settings();
    s.stations = {StationId{"Lille"}, StationId{"Lyon"}, StationId{"Paris"}};
    s.expr = lg_three_station();
    s.grouping = GroupingKind::AllTermsEachTrial;
    s.defaults = RunConfig{10000, kDefaultSeed, TermRotation::RoundRobin, 1};
    s.make_model = [] {
      return std::static_pointer_cast<const OutcomeModel>(
          IidHiddenVariableModel::make_symmetric({"a", "b", "c"}));
    };
    s.expected = {
        {LabelingScheme::SettingOnly, -1, Verdict::Respected},
        {LabelingScheme::SettingStation, -1, Verdict::Respected},
        {LabelingScheme::SettingStationParity, -3, Verdict::Respected},
        {LabelingScheme::SettingStationTime, -3, Verdict::Respected},
        {LabelingScheme::FullyDistinct, -3, Verdict::Respected},
    };
    registry.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "two-doctors-evenodd";
    s.description =
        "Two stations, one pair product per date; outcomes flip with date "
        "parity and differ by city for setting b, so every product is -1 "
        "while every single outcome averages to zero.";
    s.settings = plain_settings();
    s.stations = {StationId{"Lille"}, StationId{"Lyon"}};
    s.expr = lg_two_station();
    s.grouping = GroupingKind::OneTermPerTrial;
    s.defaults = RunConfig{10000, kDefaultSeed, TermRotation::RoundRobin, 1};
    s.make_model = [] {
      return std::static_pointer_cast<const OutcomeModel>(
          EvenOddCityModel::make());
    };
    s.expected = {
        {LabelingScheme::SettingOnly, -1, Verdict::Violated},
        {LabelingScheme::SettingStation, -3, Verdict::Respected},
        {LabelingScheme::SettingStationParity, -3, Verdict::Respected},
        {LabelingScheme::SettingStationTime, -3, Verdict::Respected},
        {LabelingScheme::FullyDistinct, -3, Verdict::Respected},
    };
    registry.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "two-doctors-equipment";
    s.description =
        "Same statistics as two-doctors-evenodd, produced by period-2 "
        "equipment parameters per setting instead of a hard-coded parity "
        "rule.";
    s.settings = plain_settings();
    s.stations = {StationId{"Lille"}, StationId{"Lyon"}};
    s.expr = lg_two_station();
    s.grouping = GroupingKind::OneTermPerTrial;
    s.defaults = RunConfig{10000, kDefaultSeed, TermRotation::RoundRobin, 1};
    s.make_model = [] {
      std::map<std::string, std::vector<std::string>> params{
          {"a", {"even", "odd"}},
          {"b", {"even", "odd"}},
          {"c", {"even", "odd"}},
      };
      std::map<std::string,
               std::map<std::string, std::map<std::string, int>>>
          response{
              {"a",
               {{"Lille", {{"even", 1}, {"odd", -1}}},
                {"Lyon", {{"even", 1}, {"odd", -1}}}}},
              {"b",
               {{"Lille", {{"even", 1}, {"odd", -1}}},
                {"Lyon", {{"even", -1}, {"odd", 1}}}}},
              {"c",
               {{"Lille", {{"even", -1}, {"odd", 1}}},
                {"Lyon", {{"even", -1}, {"odd", 1}}}}},
          };
      return std::static_pointer_cast<const OutcomeModel>(
          EquipmentTimeParamModel::make(2, std::move(params),
                                        std::move(response)));
    };
    s.expected = {
        {LabelingScheme::SettingOnly, -1, Verdict::Violated},
        {LabelingScheme::SettingStation, -3, Verdict::Respected},
        {LabelingScheme::SettingStationParity, -3, Verdict::Respected},
        {LabelingScheme::SettingStationTime, -3, Verdict::Respected},
        {LabelingScheme::FullyDistinct, -3, Verdict::Respected},
    };
    registry.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "quantum-triple";
    s.description =
        "Three stations measure three particles per date under a joint "
        "outcome distribution; the per-date sum of pair products is "
        "algebraically at least -1.";
    s.settings = plain_settings();
    s.stations = {StationId{"S1"}, StationId{"S2"}, StationId{"S3"}};
    s.expr = triple_station_expression();
    s.grouping = GroupingKind::AllTermsEachTrial;
    s.defaults = RunConfig{10000, kDefaultSeed, TermRotation::RoundRobin, 1};
    s.make_model = [] {
      return std::static_pointer_cast<const OutcomeModel>(
          JointTripleModel::make_uniform({"a", "b", "c"}));
    };
    s.expected = {
        {LabelingScheme::SettingOnly, -1, Verdict::Respected},
        {LabelingScheme::SettingStation, -1, Verdict::Respected},
        {LabelingScheme::SettingStationParity, -3, Verdict::Respected},
        {LabelingScheme::SettingStationTime, -3, Verdict::Respected},
        {LabelingScheme::FullyDistinct, -3, Verdict::Respected},
    };
    registry.push_back(std::move(s));
  }

  {
    Scenario s;
    s.name = "quantum-singlet-pairs";
    s.description =
        "Singlet pair sampler over two stations with three settings pairwise "
        "60 degrees apart; each date measures one of the three setting "
        "pairs.";
    s.settings = singlet_settings();
    s.stations = {StationId{"Alice"}, StationId{"Bob"}};
    s.expr = singlet_pair_expression();
    s.grouping = GroupingKind::OneTermPerTrial;
    s.defaults = RunConfig{300000, kDefaultSeed, TermRotation::RoundRobin, 1};
    s.make_model = [] {
      return std::static_pointer_cast<const OutcomeModel>(
          QuantumSingletModel::make());
    };
    s.expected = {
        {LabelingScheme::SettingOnly, -1, Verdict::Violated},
        {LabelingScheme::SettingStation, -3, Verdict::Respected},
        {LabelingScheme::SettingStationParity, -3, Verdict::Respected},
        {LabelingScheme::SettingStationTime, -3, Verdict::Respected},
        {LabelingScheme::FullyDistinct, -3, Verdict::Respected},
    };
    registry.push_back(std::move(s));
  }

  return registry;
}

const std::vector<Scenario>& registry() {
  static const std::vector<Scenario> scenarios = build_registry();
  return scenarios;
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& s : registry()) {
    out.push_back(ScenarioInfo{s.name, s.description});
  }
  return out;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

ScenarioReport run_experiment(const std::string& label,
                              const std::vector<Setting>& settings,
                              const Expression& expr, const Schedule& schedule,
                              const OutcomeModel& model,
                              const RunConfig& config) {
  ScenarioReport report;
  report.scenario = label;
  report.config = config;
  report.log = run(model, expr, settings, schedule, config);
  report.stats = mean_correlations(report.log, expr);
  for (LabelingScheme scheme : kAllSchemes) {
    SchemeAssessment assessment;
    assessment.scheme = scheme;
    assessment.bound = enumerate_bounds(expr, scheme);
    assessment.cyclicity = detect_cyclicity(expr, scheme);
    assessment.verdict = verdict(report.stats, assessment.bound);
    report.schemes.push_back(std::move(assessment));
  }
  return report;
}

ScenarioReport run_scenario(const std::string& name,
                            const ScenarioOverrides& overrides) {
  const Scenario& scenario = find_scenario(name);
  RunConfig config = scenario.defaults;
  if (overrides.trials) config.trials = *overrides.trials;
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.rotation) config.rotation = *overrides.rotation;
  config.threads = overrides.threads;

  Schedule schedule =
      scenario.grouping == GroupingKind::AllTermsEachTrial
          ? build_codated_schedule(scenario.expr, config.trials)
          : build_rotated_schedule(scenario.expr, config.trials,
                                   config.rotation, config.seed);
  const auto model = scenario.make_model();
  return run_experiment(name, scenario.settings, scenario.expr, schedule,
                        *model, config);
}

}  // namespace bellbound
