#include "bellbound/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace bellbound {

namespace {

// Observation lookup keyed by (station, time); the schedule invariant
// guarantees at most one measurement per station per date.
struct ObservationIndex {
  std::unordered_map<std::string, int> by_station_time;

  static std::string key(const std::string& station, std::uint64_t t) {
    return station + "@" + std::to_string(t);
  }

  explicit ObservationIndex(const TrialLog& log) {
    by_station_time.reserve(log.observations.size());
    for (const auto& obs : log.observations) {
      by_station_time.emplace(key(obs.station, obs.time.n),
                              obs.value.value());
    }
  }

  // Returns 0 when the measurement is absent.
  int value(const std::string& station, std::uint64_t t) const {
    auto it = by_station_time.find(key(station, t));
    return it == by_station_time.end() ? 0 : it->second;
  }
};

int term_product_at(const ObservationIndex& index, const Term& term,
                    std::uint64_t t) {
  int product = 1;
  for (const auto& slot : term.slots) {
    const int v = index.value(slot.station, t);
    if (v == 0) return 0;
    product *= v;
  }
  return product;
}

}  // namespace

std::vector<int> gamma_per_trial(const TrialLog& log, const Expression& expr) {
  if (log.schedule.kind != GroupingKind::AllTermsEachTrial) {
    throw std::invalid_argument(
        "gamma_per_trial: schedule does not co-date all terms per trial");
  }
  const ObservationIndex index(log);
  std::vector<int> gammas;
  gammas.reserve(log.schedule.trials);
  for (std::uint64_t t = 0; t < log.schedule.trials; ++t) {
    int sum = 0;
    for (const auto& term : expr.terms) {
      const int product = term_product_at(index, term, t);
      if (product == 0) {
        throw std::invalid_argument("gamma_per_trial: missing measurement at "
                                    "time " + std::to_string(t));
      }
      sum += product;
    }
    gammas.push_back(sum);
  }
  return gammas;
}

CorrelationReport mean_correlations(const TrialLog& log,
                                    const Expression& expr) {
  const ObservationIndex index(log);
  CorrelationReport report;
  report.per_term.resize(expr.terms.size());

  // Integer accumulation: products are exactly +/-1, so deterministic data
  // yields exact means.
  std::vector<std::int64_t> sums(expr.terms.size(), 0);
  std::vector<std::uint64_t> counts(expr.terms.size(), 0);
  for (std::uint64_t t = 0; t < log.schedule.trials; ++t) {
    for (std::size_t term : log.schedule.terms_at(t)) {
      const int product = term_product_at(index, expr.terms[term], t);
      if (product == 0) continue;
      sums[term] += product;
      ++counts[term];
    }
  }
  for (std::size_t term = 0; term < expr.terms.size(); ++term) {
    if (counts[term] == 0) {
      throw std::invalid_argument("mean_correlations: term " +
                                  std::to_string(term) + " was never sampled");
    }
    TermStats& stats = report.per_term[term];
    stats.count = counts[term];
    const double n = static_cast<double>(counts[term]);
    stats.estimate = static_cast<double>(sums[term]) / n;
    if (counts[term] > 1) {
      // Sample variance of +/-1 data: n/(n-1) * (1 - mean^2).
      const double variance =
          std::max(0.0, (1.0 - stats.estimate * stats.estimate) * n / (n - 1));
      stats.std_error = std::sqrt(variance / n);
    }
    report.gamma_mean += stats.estimate;
  }

  if (log.schedule.kind == GroupingKind::AllTermsEachTrial) {
    report.gamma_per_trial = gamma_per_trial(log, expr);
  }

  std::map<std::string, std::pair<std::int64_t, std::uint64_t>> singles;
  for (const auto& obs : log.observations) {
    auto& [sum, count] = singles[obs.setting + "/" + obs.station];
    sum += obs.value.value();
    ++count;
  }
  for (const auto& [key, acc] : singles) {
    report.singles[key] =
        static_cast<double>(acc.first) / static_cast<double>(acc.second);
  }
  return report;
}

VerdictRecord verdict(const CorrelationReport& report,
                      const BoundResult& bound) {
  VerdictRecord record;
  double variance = 0.0;
  for (const auto& stats : report.per_term) {
    variance += stats.std_error * stats.std_error;
  }
  record.combined_std_error = std::sqrt(variance);
  record.margin = std::max(static_cast<double>(bound.min) - report.gamma_mean,
                           report.gamma_mean - static_cast<double>(bound.max));
  if (record.combined_std_error > 0.0) {
    record.z_score = record.margin / record.combined_std_error;
  }
  record.verdict = record.margin > 3.0 * record.combined_std_error
                       ? Verdict::Violated
                       : Verdict::Respected;
  return record;
}

}  // namespace bellbound
