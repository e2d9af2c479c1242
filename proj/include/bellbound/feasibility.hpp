#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellbound/bounds.hpp"
#include "bellbound/expression.hpp"
#include "bellbound/labeling.hpp"

namespace bellbound {

/// The marginal problem: do the target per-term expectations extend to one
/// joint distribution over all logical variables?
struct FeasibilityProblem {
  Expression expr;
  LabelingScheme scheme = LabelingScheme::SettingOnly;
  std::vector<double> targets;  // one per term, each in [-1, 1]
};

struct WitnessAtom {
  std::map<std::string, int> assignment;  // variable key -> +/-1
  double probability = 0.0;
};

struct FeasibilityVerdict {
  bool feasible = false;
  // Sparse distribution over assignments (probability > 1e-12), present when
  // feasible. Reproduces every target exactly up to double conversion.
  std::vector<WitnessAtom> witness;
  // When infeasible because the target sum falls outside the expression's
  // enumerated bound, that bound is attached as the certificate.
  std::optional<BoundResult> certificate;
};

/// Linear feasibility over the full assignment space, decided exactly with
/// rational arithmetic (phase-I simplex with Bland's rule over the distinct
/// moment columns). Throws CapacityError when the variable count exceeds
/// `cap`; std::invalid_argument for malformed targets.
FeasibilityVerdict check_feasibility(const FeasibilityProblem& problem,
                                     std::size_t cap = 16);

}  // namespace bellbound
