#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellbound/bounds.hpp"
#include "bellbound/core.hpp"
#include "bellbound/expression.hpp"

namespace bellbound {

struct TermStats {
  double estimate = 0.0;  // sample mean of the term's product, in [-1, 1]
  std::uint64_t count = 0;
  double std_error = 0.0;  // sample std / sqrt(count)
};

struct CorrelationReport {
  std::vector<TermStats> per_term;
  // Present only when every term is co-dated at every trial; absent for
  // rotated schedules rather than fabricated.
  std::optional<std::vector<int>> gamma_per_trial;
  double gamma_mean = 0.0;  // sum of per-term estimates
  // Mean outcome per (setting, station), keyed "setting/station".
  std::map<std::string, double> singles;
};

enum class Verdict { Respected, Violated };

struct VerdictRecord {
  Verdict verdict = Verdict::Respected;
  // Distance past the bound (positive = outside [min, max], negative = slack).
  double margin = 0.0;
  double combined_std_error = 0.0;
  // margin / combined error; absent for exact (zero-error) data.
  std::optional<double> z_score;
};

/// Per-trial sums Gamma(n). Requires a schedule that measures all terms at
/// every date; throws std::invalid_argument otherwise.
std::vector<int> gamma_per_trial(const TrialLog& log, const Expression& expr);

/// Per-term sample means, singles marginals, and the gamma estimate.
/// Throws std::invalid_argument when some term was never sampled.
CorrelationReport mean_correlations(const TrialLog& log,
                                    const Expression& expr);

/// Compares gamma_mean against an enumerated bound at the 3-sigma threshold.
VerdictRecord verdict(const CorrelationReport& report,
                      const BoundResult& bound);

}  // namespace bellbound
