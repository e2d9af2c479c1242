#include "doctest.h"

#include <cmath>

#include "bellbound/core.hpp"
#include "bellbound/expression.hpp"

using namespace bellbound;

TEST_CASE("outcome values outside {-1,+1} are rejected") {
  CHECK(OutcomeValue::of(1).value() == 1);
  CHECK(OutcomeValue::of(-1).value() == -1);
  for (int v : {0, 2, -2, 100, -7}) {
    CHECK_THROWS_AS(OutcomeValue::of(v), std::invalid_argument);
  }
}

TEST_CASE("setting directions are normalized at construction") {
  const Setting s = Setting::make("a", Vec3{0.0, 0.0, 2.5});
  REQUIRE(s.direction().has_value());
  CHECK(std::abs(norm(*s.direction()) - 1.0) <= 1e-12);
  CHECK(s.direction()->z == doctest::Approx(1.0));

  CHECK_THROWS_AS(Setting::make("a", Vec3{0.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Setting::make(""), std::invalid_argument);
}

TEST_CASE("two-doctor schedule validates against the LG expression") {
  const Expression expr = lg_two_station();
  const Schedule schedule = build_rotated_schedule(
      expr, 9, TermRotation::RoundRobin, 1);
  const auto result = validate_schedule(schedule, expr);
  CHECK(result.ok());
}

TEST_CASE("station measuring two settings at one date is a violation") {
  // Co-dating the two-station expression forces Lille to examine both a and
  // b on every date.
  const Expression expr = lg_two_station();
  const Schedule schedule = build_codated_schedule(expr, 4);
  const auto result = validate_schedule(schedule, expr);
  REQUIRE_FALSE(result.ok());
  // Both Lyon (b vs c) and Lille (a vs b) are over-booked.
  CHECK(result.violations.front().find("measures settings") !=
        std::string::npos);
  bool names_lille = false;
  for (const auto& violation : result.violations) {
    if (violation.find("Lille") != std::string::npos) names_lille = true;
  }
  CHECK(names_lille);
}

TEST_CASE("three-doctor co-dated schedule is valid") {
  const Expression expr = lg_three_station();
  const Schedule schedule = build_codated_schedule(expr, 4);
  CHECK(validate_schedule(schedule, expr).ok());
}

TEST_CASE("explicit event lists catch raw invariant violations") {
  const Expression expr = lg_three_station();

  SUBCASE("station repeated at one time with different settings") {
    std::vector<MeasurementEvent> events = {
        {StationId{"Lille"}, "a", TimeIndex{0}, {0, 0}},
        {StationId{"Lille"}, "b", TimeIndex{0}, {0, 1}},
    };
    const auto result = validate_events(events, expr);
    REQUIRE_FALSE(result.ok());
    CHECK(result.violations.front().find("repeated at time") !=
          std::string::npos);
  }

  SUBCASE("term spanning two dates is not co-dated") {
    std::vector<MeasurementEvent> events = {
        {StationId{"Lille"}, "a", TimeIndex{3}, {0, 0}},
        {StationId{"Lyon"}, "b", TimeIndex{4}, {0, 1}},
    };
    const auto result = validate_events(events, expr);
    REQUIRE_FALSE(result.ok());
    bool found = false;
    for (const auto& violation : result.violations) {
      if (violation.find("not co-dated") != std::string::npos) found = true;
    }
    CHECK(found);
  }

  SUBCASE("slot filled twice at one date") {
    std::vector<MeasurementEvent> events = {
        {StationId{"Lille"}, "a", TimeIndex{0}, {0, 0}},
        {StationId{"Paris"}, "a", TimeIndex{0}, {0, 0}},
        {StationId{"Lyon"}, "b", TimeIndex{0}, {0, 1}},
    };
    const auto result = validate_events(events, expr);
    REQUIRE_FALSE(result.ok());
    CHECK(result.violations.front().find("filled twice") != std::string::npos);
  }

  SUBCASE("undefined slot reference") {
    std::vector<MeasurementEvent> events = {
        {StationId{"Lille"}, "a", TimeIndex{0}, {7, 0}},
    };
    CHECK_FALSE(validate_events(events, expr).ok());
  }
}

TEST_CASE("expression validation catches unknown ids and duplicates") {
  const Expression expr = lg_three_station();
  const std::vector<Setting> settings = {Setting::make("a"), Setting::make("b"),
                                         Setting::make("c")};
  const std::vector<StationId> stations = {StationId{"Lille"},
                                           StationId{"Lyon"},
                                           StationId{"Paris"}};
  CHECK(validate_expression(expr, settings, stations).ok());

  SUBCASE("missing station") {
    CHECK_FALSE(validate_expression(expr, settings,
                                    {StationId{"Lille"}, StationId{"Lyon"}})
                    .ok());
  }
  SUBCASE("duplicate setting id") {
    auto dup = settings;
    dup.push_back(Setting::make("a"));
    CHECK_FALSE(validate_expression(expr, dup, stations).ok());
  }
  SUBCASE("unknown setting in a slot") {
    Expression bad = expr;
    bad.terms[0].slots[0].setting = "zz";
    CHECK_FALSE(validate_expression(bad, settings, stations).ok());
  }
}

TEST_CASE("rotated schedules enumerate the expected events") {
  const Expression expr = lg_two_station();
  const Schedule schedule =
      build_rotated_schedule(expr, 6, TermRotation::RoundRobin, 1);
  CHECK(schedule.terms_at(0) == std::vector<std::size_t>{0});
  CHECK(schedule.terms_at(4) == std::vector<std::size_t>{1});

  std::size_t events = 0;
  schedule.for_each_event(2, [&](const MeasurementEvent& ev) {
    CHECK(ev.term_slot.term == 2);
    CHECK(ev.time.n == 2);
    ++events;
  });
  CHECK(events == 2);
}
