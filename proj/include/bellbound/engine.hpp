#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bellbound/core.hpp"
#include "bellbound/models.hpp"
#include "bellbound/rng.hpp"

namespace bellbound {

struct RunConfig {
  std::uint64_t trials = 1;
  std::uint64_t seed = kDefaultSeed;
  TermRotation rotation = TermRotation::RoundRobin;
  unsigned threads = 1;
};

/// Runs the model over every trial group of the schedule. Trial t's
/// randomness is derived solely from (seed, t); the log is assembled in trial
/// order and is byte-identical for any thread count.
///
/// `settings` supplies direction vectors for models that need them.
/// Throws std::invalid_argument on schedule/trial-count mismatch or when the
/// schedule fails validation against `expr`.
TrialLog run(const OutcomeModel& model, const Expression& expr,
             const std::vector<Setting>& settings, const Schedule& schedule,
             const RunConfig& config);

/// CSV with fixed header: trial,station,setting,time,value.
void write_csv(const TrialLog& log, std::ostream& out);

/// Line-delimited records, one observation per line.
void write_jsonl(const TrialLog& log, std::ostream& out);

}  // namespace bellbound
