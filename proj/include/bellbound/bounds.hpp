#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellbound/expression.hpp"
#include "bellbound/labeling.hpp"

namespace bellbound {

/// Raised when an operation would enumerate more logical variables than its
/// configured cap allows.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t variable_count, std::size_t cap)
      : std::runtime_error("expression has " + std::to_string(variable_count) +
                           " distinct variables, cap is " +
                           std::to_string(cap)),
        variable_count(variable_count),
        cap(cap) {}

  std::size_t variable_count;
  std::size_t cap;
};

/// Tight min/max of an expression over all +/-1 assignments to its distinct
/// logical variables, with the trivial +/-T envelope for comparison.
struct BoundResult {
  int min = 0;
  int max = 0;
  int trivial_min = 0;  // -T
  int trivial_max = 0;  // +T
  bool nontrivial = false;
  std::map<std::string, int> witness_min;  // attains min
  std::size_t variable_count = 0;
};

struct CyclicityReport {
  bool has_cycle = false;
  // Term indices forming a closed chain: consecutive entries share a logical
  // variable and the chain wraps around. Empty when acyclic.
  std::vector<std::size_t> cycle_witness;
};

/// Distinct variables of `expr` under `scheme`, in first-occurrence order.
/// Assignment index bit i refers to variables[i] (bit set means -1).
std::vector<std::string> expression_variables(const Expression& expr,
                                              LabelingScheme scheme);

/// Sum over terms of the product of assigned slot values.
/// Throws std::out_of_range naming the first variable missing from the
/// assignment.
int evaluate(const Expression& expr, LabelingScheme scheme,
             const std::map<std::string, int>& assignment);

/// Exact bounds by enumeration of all 2^v assignments. Witness ties break
/// toward the lowest assignment index. Throws CapacityError above `cap`.
BoundResult enumerate_bounds(const Expression& expr, LabelingScheme scheme,
                             std::size_t cap = 24);

/// Cycle test on the bipartite incidence multigraph (terms vs. variables,
/// one edge per slot occurrence). For pairwise terms this coincides with the
/// variable multigraph where each term is an edge; for k-ary terms (k > 2)
/// the incidence test is a generalization used as a diagnostic only.
CyclicityReport detect_cyclicity(const Expression& expr, LabelingScheme scheme);

}  // namespace bellbound
