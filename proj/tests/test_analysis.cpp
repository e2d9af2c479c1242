#include "doctest.h"

#include <cmath>

#include "bellbound/analysis.hpp"
#include "bellbound/engine.hpp"

using namespace bellbound;

namespace {

std::vector<Setting> plain_settings() {
  return {Setting::make("a"), Setting::make("b"), Setting::make("c")};
}

Expression triple_expr() {
  Expression expr;
  expr.terms = {Term{{{"a", "S1"}, {"b", "S2"}}},
                Term{{{"a", "S1"}, {"c", "S3"}}},
                Term{{{"b", "S2"}, {"c", "S3"}}}};
  return expr;
}

// Deterministic all-plus responses.
class AllPlusModel : public OutcomeModel {
 public:
  std::string name() const override { return "all-plus"; }
  void respond(const TrialGroup& group, TrialStream&,
               std::vector<OutcomeValue>& out) const override {
    out.assign(group.measurements.size(), OutcomeValue::plus());
  }
};

// Arbitrary deterministic junk: sign flips depending on a hash of station,
// setting, and date. Adversarial in the sense that it follows no model
// structure at all.
class HashSignModel : public OutcomeModel {
 public:
  explicit HashSignModel(std::uint64_t salt) : salt_(salt) {}
  std::string name() const override { return "hash-sign"; }
  void respond(const TrialGroup& group, TrialStream&,
               std::vector<OutcomeValue>& out) const override {
    out.clear();
    for (const auto& m : group.measurements) {
      std::uint64_t h = salt_ ^ (m.time.n * 0x9E3779B97F4A7C15ULL);
      for (char c : m.station) h = h * 131 + static_cast<unsigned char>(c);
      for (char c : m.setting) h = h * 131 + static_cast<unsigned char>(c);
      h = detail::mix64(h);
      out.push_back(h & 1 ? OutcomeValue::plus() : OutcomeValue::minus());
    }
  }

 private:
  std::uint64_t salt_;
};

}  // namespace

TEST_CASE("per-trial gamma on a co-dated triple schedule") {
  const Expression expr = triple_expr();
  const RunConfig config{64, 11, TermRotation::RoundRobin, 1};
  const Schedule schedule = build_codated_schedule(expr, config.trials);
  const auto model = JointTripleModel::make_uniform({"a", "b", "c"});
  const TrialLog log = run(*model, expr, plain_settings(), schedule, config);

  const auto gammas = gamma_per_trial(log, expr);
  REQUIRE(gammas.size() == 64);
  for (int gamma : gammas) {
    CHECK((gamma == -1 || gamma == 3));
  }
}

TEST_CASE("all-plus outcomes give gamma 3 every trial") {
  const Expression expr = triple_expr();
  const RunConfig config{16, 1, TermRotation::RoundRobin, 1};
  const Schedule schedule = build_codated_schedule(expr, config.trials);
  const AllPlusModel model;
  const TrialLog log = run(model, expr, plain_settings(), schedule, config);
  for (int gamma : gamma_per_trial(log, expr)) {
    CHECK(gamma == 3);
  }
}

TEST_CASE("per-trial gamma is refused for rotated schedules") {
  const Expression expr = lg_two_station();
  const RunConfig config{9, 1, TermRotation::RoundRobin, 1};
  const Schedule schedule =
      build_rotated_schedule(expr, config.trials, config.rotation, config.seed);
  const auto model = EvenOddCityModel::make();
  const TrialLog log = run(*model, expr, plain_settings(), schedule, config);
  CHECK_THROWS_AS(gamma_per_trial(log, expr), std::invalid_argument);

  // The report carries no fabricated per-trial series either.
  const CorrelationReport report = mean_correlations(log, expr);
  CHECK_FALSE(report.gamma_per_trial.has_value());
}

TEST_CASE("mean of per-trial gamma equals gamma_mean on co-dated data") {
  const Expression expr = triple_expr();
  const RunConfig config{500, 21, TermRotation::RoundRobin, 1};
  const Schedule schedule = build_codated_schedule(expr, config.trials);
  const auto model = JointTripleModel::make_uniform({"a", "b", "c"});
  const TrialLog log = run(*model, expr, plain_settings(), schedule, config);

  const CorrelationReport report = mean_correlations(log, expr);
  REQUIRE(report.gamma_per_trial.has_value());
  double mean = 0.0;
  for (int gamma : *report.gamma_per_trial) mean += gamma;
  mean /= static_cast<double>(report.gamma_per_trial->size());
  CHECK(report.gamma_mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(report.gamma_mean >= -1.0);
}

TEST_CASE("even-odd report: exact estimates and a clean violation verdict") {
  const Expression expr = lg_two_station();
  const RunConfig config{999, 4, TermRotation::RoundRobin, 1};
  const Schedule schedule =
      build_rotated_schedule(expr, config.trials, config.rotation, config.seed);
  const auto model = EvenOddCityModel::make();
  const TrialLog log = run(*model, expr, plain_settings(), schedule, config);
  const CorrelationReport report = mean_correlations(log, expr);

  for (const auto& stats : report.per_term) {
    CHECK(stats.estimate == -1.0);
    CHECK(stats.count == 333);
    CHECK(stats.std_error == 0.0);
  }
  CHECK(report.gamma_mean == -3.0);

  const BoundResult tight = enumerate_bounds(expr, LabelingScheme::SettingOnly);
  const VerdictRecord violated = verdict(report, tight);
  CHECK(violated.verdict == Verdict::Violated);
  CHECK(violated.margin == doctest::Approx(2.0));
  CHECK_FALSE(violated.z_score.has_value());  // exact data, zero error

  const BoundResult trivial =
      enumerate_bounds(expr, LabelingScheme::FullyDistinct);
  const VerdictRecord respected = verdict(report, trivial);
  CHECK(respected.verdict == Verdict::Respected);
  CHECK(respected.margin == doctest::Approx(0.0));
}

TEST_CASE("singles marginals are averaged per setting and station") {
  const Expression expr = lg_two_station();
  const RunConfig config{10, 4, TermRotation::RoundRobin, 1};
  const Schedule schedule =
      build_rotated_schedule(expr, config.trials, config.rotation, config.seed);
  const AllPlusModel model;
  const TrialLog log = run(model, expr, plain_settings(), schedule, config);
  const CorrelationReport report = mean_correlations(log, expr);
  REQUIRE(report.singles.count("a/Lille") == 1);
  CHECK(report.singles.at("a/Lille") == 1.0);
}

TEST_CASE("three co-dated outcomes keep gamma_mean at or above -1 for any "
          "model") {
  const Expression expr = triple_expr();
  for (std::uint64_t salt = 0; salt < 40; ++salt) {
    const RunConfig config{128, salt, TermRotation::RoundRobin, 1};
    const Schedule schedule = build_codated_schedule(expr, config.trials);
    const HashSignModel model(salt * 0x51ED2701);
    const TrialLog log = run(model, expr, plain_settings(), schedule, config);
    const CorrelationReport report = mean_correlations(log, expr);
    CHECK(report.gamma_mean >= -1.0);
    for (int gamma : *report.gamma_per_trial) {
      CHECK(gamma >= -1);
    }
  }
}

TEST_CASE("fully distinct data never violates its enumerated bound") {
  for (std::uint64_t salt = 0; salt < 20; ++salt) {
    for (bool codated : {true, false}) {
      const Expression expr = codated ? triple_expr() : lg_two_station();
      const RunConfig config{90, salt, TermRotation::RoundRobin, 1};
      const Schedule schedule =
          codated ? build_codated_schedule(expr, config.trials)
                  : build_rotated_schedule(expr, config.trials, config.rotation,
                                           config.seed);
      const HashSignModel model(salt);
      const TrialLog log = run(model, expr, plain_settings(), schedule, config);
      const CorrelationReport report = mean_correlations(log, expr);
      const BoundResult bound =
          enumerate_bounds(expr, LabelingScheme::FullyDistinct);
      CHECK(verdict(report, bound).verdict == Verdict::Respected);
    }
  }
}

TEST_CASE("empty term sample is an error") {
  const Expression expr = lg_two_station();
  // Two trials round-robin: term 2 never sampled.
  const RunConfig config{2, 1, TermRotation::RoundRobin, 1};
  const Schedule schedule =
      build_rotated_schedule(expr, config.trials, config.rotation, config.seed);
  const auto model = EvenOddCityModel::make();
  const TrialLog log = run(*model, expr, plain_settings(), schedule, config);
  CHECK_THROWS_AS(mean_correlations(log, expr), std::invalid_argument);
}
