#include "doctest.h"

#include <fstream>

#include "bellbound/engine.hpp"
#include "bellbound/serialize.hpp"

using namespace bellbound;

namespace {

std::vector<Setting> plain_settings() {
  return {Setting::make("a"), Setting::make("b"), Setting::make("c")};
}

}  // namespace

TEST_CASE("expression round-trips through json") {
  const Expression expr = lg_three_station();
  const Expression back = expression_from_json(expression_to_json(expr));
  CHECK(back == expr);
}

TEST_CASE("schedules round-trip through json") {
  const Expression expr = lg_two_station();

  SUBCASE("co-dated") {
    const Schedule schedule = build_codated_schedule(lg_three_station(), 12);
    CHECK(schedule_from_json(schedule_to_json(schedule)) == schedule);
  }
  SUBCASE("rotated uniform") {
    const Schedule schedule =
        build_rotated_schedule(expr, 50, TermRotation::UniformRandom, 7);
    CHECK(schedule_from_json(schedule_to_json(schedule)) == schedule);
  }
}

TEST_CASE("trial logs round-trip through json") {
  const Expression expr = lg_two_station();
  const RunConfig config{30, 13, TermRotation::RoundRobin, 1};
  const Schedule schedule =
      build_rotated_schedule(expr, config.trials, config.rotation, config.seed);
  const auto model = EvenOddCityModel::make();
  const TrialLog log = run(*model, expr, plain_settings(), schedule, config);

  const Json j = log_to_json(log);
  const TrialLog back = log_from_json(j);
  CHECK(back.seed == log.seed);
  CHECK(back.model_name == log.model_name);
  CHECK(back.schedule == log.schedule);
  REQUIRE(back.observations.size() == log.observations.size());
  for (std::size_t i = 0; i < back.observations.size(); ++i) {
    CHECK(back.observations[i].setting == log.observations[i].setting);
    CHECK(back.observations[i].station == log.observations[i].station);
    CHECK(back.observations[i].time == log.observations[i].time);
    CHECK(back.observations[i].value == log.observations[i].value);
  }
  // Byte-level identity of the re-serialized document.
  CHECK(log_to_json(back).dump() == j.dump());
}

TEST_CASE("experiment document parses with exact section names") {
  // Field names are the on-disk contract; this mirrors the golden file.
  const Json doc = Json::parse(R"({
    "name": "evenodd-file",
    "settings": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
    "stations": ["Lille", "Lyon"],
    "expression": {"terms": [
      {"slots": [{"setting": "a", "station": "Lille"},
                 {"setting": "b", "station": "Lyon"}]},
      {"slots": [{"setting": "a", "station": "Lille"},
                 {"setting": "c", "station": "Lyon"}]},
      {"slots": [{"setting": "b", "station": "Lille"},
                 {"setting": "c", "station": "Lyon"}]}
    ]},
    "schedule": {"style": "one-term", "trials": 600,
                 "rotation": "round-robin", "seed": 11},
    "model": {"type": "even-odd-city"}
  })");
  const ExperimentDef def = experiment_from_json(doc);
  CHECK(def.name == "evenodd-file");
  CHECK(def.settings.size() == 3);
  CHECK(def.stations.size() == 2);
  CHECK(def.expr.terms.size() == 3);
  CHECK(def.config.trials == 600);
  CHECK(def.config.seed == 11);
  CHECK(def.schedule.kind == GroupingKind::OneTermPerTrial);
  CHECK(def.model->name() == "even-odd-city");

  const TrialLog log =
      run(*def.model, def.expr, def.settings, def.schedule, def.config);
  CHECK(log.observations.size() == 1200);
}

TEST_CASE("experiment validation surfaces unknown references") {
  Json doc = Json::parse(R"({
    "settings": [{"id": "a"}, {"id": "b"}],
    "stations": ["Lille", "Lyon"],
    "expression": {"terms": [
      {"slots": [{"setting": "a", "station": "Lille"},
                 {"setting": "zz", "station": "Lyon"}]}
    ]},
    "schedule": {"style": "one-term", "trials": 5},
    "model": {"type": "even-odd-city"}
  })");
  CHECK_THROWS_AS(experiment_from_json(doc), std::invalid_argument);
}

TEST_CASE("model documents build every variant") {
  CHECK(model_from_json(Json::parse(R"({"type": "quantum-singlet"})"))
            ->name() == "quantum-singlet");
  CHECK(model_from_json(Json::parse(
            R"({"type": "joint-triple", "settings": ["a","b","c"],
                "uniform": true})"))
            ->name() == "joint-triple");
  CHECK(model_from_json(Json::parse(
            R"({"type": "iid-hidden-variable",
                "symmetric_settings": ["a","b","c"]})"))
            ->name() == "iid-hidden-variable");
  CHECK(model_from_json(Json::parse(
            R"({"type": "iid-hidden-variable",
                "lambda_values": ["x", "y"],
                "lambda_probs": [0.25, 0.75],
                "response": {"a": {"x": 1, "y": -1}}})"))
            ->name() == "iid-hidden-variable");
  CHECK(model_from_json(Json::parse(
            R"({"type": "equipment-time-param", "period": 1,
                "params": {"a": ["s"]},
                "response": {"a": {"Lille": {"s": 1}}}})"))
            ->name() == "equipment-time-param");
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"type": "warp-drive"})")),
                  std::invalid_argument);
}

TEST_CASE("golden experiment file parses and runs") {
  std::ifstream in(std::string(GOLDEN_DIR) + "/experiment_evenodd.json");
  REQUIRE(in.good());
  const ExperimentDef def = experiment_from_json(Json::parse(in));
  const TrialLog log =
      run(*def.model, def.expr, def.settings, def.schedule, def.config);
  CHECK(validate_log(log).ok());
}
