#include "bellbound/serialize.hpp"

#include <stdexcept>

namespace bellbound {

namespace {

std::string rotation_name(TermRotation rotation) {
  return rotation == TermRotation::RoundRobin ? "round-robin"
                                              : "uniform-random";
}

TermRotation rotation_from_name(const std::string& name) {
  if (name == "round-robin") return TermRotation::RoundRobin;
  if (name == "uniform-random") return TermRotation::UniformRandom;
  throw std::invalid_argument("unknown rotation '" + name + "'");
}

}  // namespace

Json expression_to_json(const Expression& expr) {
  Json terms = Json::array();
  for (const auto& term : expr.terms) {
    Json slots = Json::array();
    for (const auto& slot : term.slots) {
      slots.push_back({{"setting", slot.setting}, {"station", slot.station}});
    }
    terms.push_back({{"slots", std::move(slots)}});
  }
  return Json{{"terms", std::move(terms)}};
}

Expression expression_from_json(const Json& j) {
  Expression expr;
  for (const auto& term : j.at("terms")) {
    Term t;
    for (const auto& slot : term.at("slots")) {
      t.slots.push_back(TermSlot{slot.at("setting").get<std::string>(),
                                 slot.at("station").get<std::string>()});
    }
    expr.terms.push_back(std::move(t));
  }
  return expr;
}

Json schedule_to_json(const Schedule& schedule) {
  Json templates = Json::array();
  for (const auto& tpl : schedule.templates) {
    templates.push_back({{"term", tpl.term},
                         {"slot", tpl.slot},
                         {"setting", tpl.setting},
                         {"station", tpl.station}});
  }
  Json j{{"trials", schedule.trials},
         {"grouping", schedule.kind == GroupingKind::AllTermsEachTrial
                          ? "all-terms"
                          : "one-term"},
         {"templates", std::move(templates)}};
  if (schedule.kind == GroupingKind::OneTermPerTrial) {
    j["term_of_time"] = schedule.term_of_time;
  }
  return j;
}

Schedule schedule_from_json(const Json& j) {
  Schedule schedule;
  schedule.trials = j.at("trials").get<std::uint64_t>();
  const std::string grouping = j.at("grouping").get<std::string>();
  if (grouping == "all-terms") {
    schedule.kind = GroupingKind::AllTermsEachTrial;
  } else if (grouping == "one-term") {
    schedule.kind = GroupingKind::OneTermPerTrial;
  } else {
    throw std::invalid_argument("unknown grouping '" + grouping + "'");
  }
  for (const auto& tpl : j.at("templates")) {
    schedule.templates.push_back(
        SlotTemplate{tpl.at("term").get<std::size_t>(),
                     tpl.at("slot").get<std::size_t>(),
                     tpl.at("setting").get<std::string>(),
                     tpl.at("station").get<std::string>()});
  }
  if (schedule.kind == GroupingKind::OneTermPerTrial) {
    schedule.term_of_time =
        j.at("term_of_time").get<std::vector<std::uint32_t>>();
  }
  return schedule;
}

Json log_to_json(const TrialLog& log) {
  Json observations = Json::array();
  for (const auto& obs : log.observations) {
    observations.push_back(
        Json::array({obs.time.n, obs.station, obs.setting, obs.time.n,
                     obs.value.value()}));
  }
  return Json{{"model", log.model_name},
              {"seed", log.seed},
              {"schedule", schedule_to_json(log.schedule)},
              {"observations", std::move(observations)}};
}

TrialLog log_from_json(const Json& j) {
  TrialLog log;
  log.model_name = j.at("model").get<std::string>();
  log.seed = j.at("seed").get<std::uint64_t>();
  log.schedule = schedule_from_json(j.at("schedule"));
  for (const auto& row : j.at("observations")) {
    Observation obs;
    obs.station = row.at(1).get<std::string>();
    obs.setting = row.at(2).get<std::string>();
    obs.time = TimeIndex{row.at(3).get<std::uint64_t>()};
    obs.value = OutcomeValue::of(row.at(4).get<int>());
    log.observations.push_back(std::move(obs));
  }
  return log;
}

Json bound_to_json(const BoundResult& bound) {
  Json witness = Json::object();
  for (const auto& [key, value] : bound.witness_min) witness[key] = value;
  return Json{{"min", bound.min},
              {"max", bound.max},
              {"trivial_min", bound.trivial_min},
              {"trivial_max", bound.trivial_max},
              {"nontrivial", bound.nontrivial},
              {"variable_count", bound.variable_count},
              {"witness_min", std::move(witness)}};
}

Json cyclicity_to_json(const CyclicityReport& report) {
  return Json{{"has_cycle", report.has_cycle},
              {"cycle_witness", report.cycle_witness}};
}

Json feasibility_to_json(const FeasibilityVerdict& verdict) {
  Json j{{"feasible", verdict.feasible}};
  if (verdict.feasible) {
    Json witness = Json::array();
    for (const auto& atom : verdict.witness) {
      Json assignment = Json::object();
      for (const auto& [key, value] : atom.assignment) assignment[key] = value;
      witness.push_back({{"assignment", std::move(assignment)},
                         {"probability", atom.probability}});
    }
    j["witness"] = std::move(witness);
  }
  if (verdict.certificate) {
    j["certificate"] = bound_to_json(*verdict.certificate);
  }
  return j;
}

Json correlation_report_to_json(const CorrelationReport& report) {
  Json per_term = Json::array();
  for (std::size_t i = 0; i < report.per_term.size(); ++i) {
    const auto& stats = report.per_term[i];
    per_term.push_back({{"term", i},
                        {"estimate", stats.estimate},
                        {"count", stats.count},
                        {"std_error", stats.std_error}});
  }
  Json singles = Json::object();
  for (const auto& [key, mean] : report.singles) singles[key] = mean;
  Json j{{"per_term", std::move(per_term)},
         {"gamma_mean", report.gamma_mean},
         {"singles", std::move(singles)}};
  if (report.gamma_per_trial) {
    j["gamma_per_trial"] = *report.gamma_per_trial;
  } else {
    j["gamma_per_trial"] = nullptr;
  }
  return j;
}

Json verdict_to_json(const VerdictRecord& record) {
  Json j{{"verdict",
          record.verdict == Verdict::Violated ? "violated" : "respected"},
         {"margin", record.margin},
         {"combined_std_error", record.combined_std_error}};
  if (record.z_score) {
    j["z_score"] = *record.z_score;
  } else {
    j["z_score"] = nullptr;
  }
  return j;
}

Json scenario_report_to_json(const ScenarioReport& report, bool include_log) {
  Json schemes = Json::array();
  for (const auto& assessment : report.schemes) {
    schemes.push_back({{"labeling", to_string(assessment.scheme)},
                       {"bound", bound_to_json(assessment.bound)},
                       {"cyclicity", cyclicity_to_json(assessment.cyclicity)},
                       {"verdict", verdict_to_json(assessment.verdict)}});
  }
  Json j{{"scenario", report.scenario},
         {"config",
          Json{{"trials", report.config.trials},
               {"seed", report.config.seed},
               {"rotation", rotation_name(report.config.rotation)}}},
         {"stats", correlation_report_to_json(report.stats)},
         {"schemes", std::move(schemes)}};
  if (include_log) {
    j["log"] = log_to_json(report.log);
  }
  return j;
}

Json settings_to_json(const std::vector<Setting>& settings) {
  Json j = Json::array();
  for (const auto& s : settings) {
    Json entry{{"id", s.id()}};
    if (s.direction()) {
      entry["direction"] =
          Json::array({s.direction()->x, s.direction()->y, s.direction()->z});
    }
    j.push_back(std::move(entry));
  }
  return j;
}

std::vector<Setting> settings_from_json(const Json& j) {
  std::vector<Setting> settings;
  for (const auto& entry : j) {
    const std::string id = entry.at("id").get<std::string>();
    if (entry.contains("direction")) {
      const auto& d = entry.at("direction");
      if (!d.is_array() || d.size() != 3) {
        throw std::invalid_argument("setting '" + id +
                                    "': direction must be [x, y, z]");
      }
      settings.push_back(Setting::make(
          id, Vec3{d.at(0).get<double>(), d.at(1).get<double>(),
                   d.at(2).get<double>()}));
    } else {
      settings.push_back(Setting::make(id));
    }
  }
  return settings;
}

std::shared_ptr<const OutcomeModel> model_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "even-odd-city") {
    std::map<std::string, int> even_base{{"a", 1}, {"b", 1}, {"c", -1}};
    if (j.contains("even_base")) {
      even_base.clear();
      for (const auto& [key, value] : j.at("even_base").items()) {
        even_base[key] = value.get<int>();
      }
    }
    return EvenOddCityModel::make(
        std::move(even_base),
        j.value("flip_station", std::string("Lyon")),
        j.value("flip_setting", std::string("b")));
  }
  if (type == "iid-hidden-variable") {
    if (j.contains("symmetric_settings")) {
      return IidHiddenVariableModel::make_symmetric(
          j.at("symmetric_settings").get<std::vector<std::string>>());
    }
    std::map<std::string, std::map<std::string, int>> response;
    for (const auto& [setting, row] : j.at("response").items()) {
      for (const auto& [lambda, value] : row.items()) {
        response[setting][lambda] = value.get<int>();
      }
    }
    return IidHiddenVariableModel::make(
        j.at("lambda_values").get<std::vector<std::string>>(),
        j.at("lambda_probs").get<std::vector<double>>(), std::move(response));
  }
  if (type == "equipment-time-param") {
    std::map<std::string, std::vector<std::string>> params;
    for (const auto& [setting, symbols] : j.at("params").items()) {
      params[setting] = symbols.get<std::vector<std::string>>();
    }
    std::map<std::string, std::map<std::string, std::map<std::string, int>>>
        response;
    for (const auto& [setting, stations] : j.at("response").items()) {
      for (const auto& [station, row] : stations.items()) {
        for (const auto& [symbol, value] : row.items()) {
          response[setting][station][symbol] = value.get<int>();
        }
      }
    }
    return EquipmentTimeParamModel::make(j.at("period").get<std::uint64_t>(),
                                         std::move(params),
                                         std::move(response));
  }
  if (type == "quantum-singlet") {
    return QuantumSingletModel::make();
  }
  if (type == "joint-triple") {
    auto settings = j.at("settings").get<std::vector<std::string>>();
    if (j.value("uniform", false)) {
      return JointTripleModel::make_uniform(std::move(settings));
    }
    return JointTripleModel::make(std::move(settings),
                                  j.at("probs").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown model type '" + type + "'");
}

ExperimentDef experiment_from_json(const Json& j) {
  ExperimentDef def;
  def.name = j.value("name", std::string("experiment"));
  def.settings = settings_from_json(j.at("settings"));
  for (const auto& station : j.at("stations")) {
    def.stations.push_back(StationId{station.get<std::string>()});
  }
  def.expr = expression_from_json(j.at("expression"));

  const ValidationResult validation =
      validate_expression(def.expr, def.settings, def.stations);
  if (!validation.ok()) {
    throw std::invalid_argument("experiment: " + validation.violations.front());
  }

  const Json& schedule = j.at("schedule");
  def.config.trials = schedule.at("trials").get<std::uint64_t>();
  def.config.seed = schedule.value("seed", kDefaultSeed);
  def.config.rotation = rotation_from_name(
      schedule.value("rotation", std::string("round-robin")));
  const std::string style = schedule.at("style").get<std::string>();
  if (style == "all-terms") {
    def.schedule = build_codated_schedule(def.expr, def.config.trials);
  } else if (style == "one-term") {
    def.schedule = build_rotated_schedule(def.expr, def.config.trials,
                                          def.config.rotation,
                                          def.config.seed);
  } else {
    throw std::invalid_argument("unknown schedule style '" + style + "'");
  }

  def.model = model_from_json(j.at("model"));
  return def;
}

}  // namespace bellbound
