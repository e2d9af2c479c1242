#include "bellbound/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "bellbound/rational.hpp"

namespace bellbound {

namespace {

// Moment column of one assignment: the vector of term products in {-1,+1}^T,
// packed into bits (bit j set = term j evaluates to -1). Many assignments
// share a column; only distinct columns enter the linear program, each with
// its lowest assignment index as witness representative.
struct MomentColumn {
  std::uint64_t signs_packed = 0;
  std::uint32_t representative = 0;  // lowest assignment index
};

std::vector<MomentColumn> distinct_columns(
    const std::vector<std::uint32_t>& term_masks, std::size_t var_count) {
  std::unordered_map<std::uint64_t, std::uint32_t> first_seen;
  std::vector<MomentColumn> columns;
  const std::uint64_t total = 1ull << var_count;
  for (std::uint64_t a = 0; a < total; ++a) {
    std::uint64_t packed = 0;
    for (std::size_t j = 0; j < term_masks.size(); ++j) {
      if (std::popcount(static_cast<std::uint32_t>(a) & term_masks[j]) & 1) {
        packed |= (1ull << j);
      }
    }
    if (first_seen.emplace(packed, static_cast<std::uint32_t>(a)).second) {
      columns.push_back({packed, static_cast<std::uint32_t>(a)});
    }
  }
  return columns;
}

// Phase-I simplex with Bland's rule over exact rationals. Rows: one
// normalization constraint plus one moment constraint per term. Columns:
// one weight per distinct moment column plus one artificial per row.
// Returns true (and the weights) when the artificial optimum is zero.
bool solve_distribution(const std::vector<MomentColumn>& columns,
                        const std::vector<Rational>& targets,
                        std::vector<Rational>& weights) {
  const std::size_t term_count = targets.size();
  const std::size_t rows = term_count + 1;
  const std::size_t structural = columns.size();
  const std::size_t total_cols = structural + rows;

  // tableau[r] = coefficients | rhs, with rhs kept nonnegative.
  std::vector<std::vector<Rational>> tab(rows,
                                         std::vector<Rational>(total_cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    Rational rhs = (r == 0) ? Rational(1) : targets[r - 1];
    for (std::size_t c = 0; c < structural; ++c) {
      if (r == 0) {
        tab[r][c] = Rational(1);
      } else {
        const bool negative = (columns[c].signs_packed >> (r - 1)) & 1;
        tab[r][c] = negative ? Rational(-1) : Rational(1);
      }
    }
    if (rhs.sign() < 0) {
      rhs = -rhs;
      for (std::size_t c = 0; c < structural; ++c) tab[r][c] = -tab[r][c];
    }
    tab[r][structural + r] = Rational(1);  // artificial
    tab[r][total_cols] = rhs;
  }

  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = structural + r;

  // Phase-I objective: minimize the sum of artificials. Reduced cost of
  // column c is -(sum over rows of tab[r][c] where basis[r] is artificial).
  auto reduced_cost = [&](std::size_t c) {
    Rational cost(0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] >= structural) cost = cost - tab[r][c];
    }
    if (c >= structural) cost = cost + Rational(1);
    return cost;
  };

  while (true) {
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t entering = total_cols;
    for (std::size_t c = 0; c < total_cols; ++c) {
      if (std::find(basis.begin(), basis.end(), c) != basis.end()) continue;
      if (reduced_cost(c).sign() < 0) {
        entering = c;
        break;
      }
    }
    if (entering == total_cols) break;  // optimal

    // Ratio test; Bland tie-break on the lowest basis index.
    std::size_t leaving = rows;
    Rational best_ratio(0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab[r][entering].sign() <= 0) continue;
      Rational ratio = tab[r][total_cols] / tab[r][entering];
      if (leaving == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving == rows) break;  // unbounded cannot happen here

    // Pivot.
    const Rational pivot = tab[leaving][entering];
    for (auto& cell : tab[leaving]) cell = cell / pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leaving || tab[r][entering].is_zero()) continue;
      const Rational factor = tab[r][entering];
      for (std::size_t c = 0; c <= total_cols; ++c) {
        tab[r][c] = tab[r][c] - factor * tab[leaving][c];
      }
    }
    basis[leaving] = entering;
  }

  Rational objective(0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] >= structural) objective = objective + tab[r][total_cols];
  }
  if (!objective.is_zero()) return false;

  weights.assign(structural, Rational(0));
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < structural) weights[basis[r]] = tab[r][total_cols];
  }
  return true;
}

}  // namespace

FeasibilityVerdict check_feasibility(const FeasibilityProblem& problem,
                                     std::size_t cap) {
  const std::size_t term_count = problem.expr.terms.size();
  if (problem.targets.size() != term_count) {
    throw std::invalid_argument(
        "expected " + std::to_string(term_count) + " targets, got " +
        std::to_string(problem.targets.size()));
  }
  for (double t : problem.targets) {
    if (!(t >= -1.0 && t <= 1.0)) {
      throw std::invalid_argument("target " + std::to_string(t) +
                                  " outside [-1, 1]");
    }
  }
  if (term_count > 63) {
    throw CapacityError(term_count, 63);
  }

  const auto variables = expression_variables(problem.expr, problem.scheme);
  // 24 is the hard ceiling: the column scan is 2^v.
  const std::size_t effective_cap = std::min<std::size_t>(cap, 24);
  if (variables.size() > effective_cap) {
    throw CapacityError(variables.size(), effective_cap);
  }

  // Same mask reduction as the bound enumerator.
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    index.emplace(variables[i], i);
  }
  std::vector<std::uint32_t> term_masks;
  for (const auto& term_labels : slot_labels(problem.expr, problem.scheme)) {
    std::uint32_t mask = 0;
    for (const auto& key : term_labels) mask ^= (1u << index.at(key));
    term_masks.push_back(mask);
  }

  const auto columns = distinct_columns(term_masks, variables.size());

  std::vector<Rational> targets;
  targets.reserve(term_count);
  for (double t : problem.targets) targets.push_back(Rational::from_double(t));

  FeasibilityVerdict verdict;
  std::vector<Rational> weights;
  verdict.feasible = solve_distribution(columns, targets, weights);

  if (verdict.feasible) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const double p = weights[c].to_double();
      if (p <= 1e-12) continue;
      WitnessAtom atom;
      atom.probability = p;
      for (std::size_t i = 0; i < variables.size(); ++i) {
        atom.assignment[variables[i]] =
            (columns[c].representative >> i) & 1 ? -1 : 1;
      }
      verdict.witness.push_back(std::move(atom));
    }
  } else {
    double target_sum = 0.0;
    for (double t : problem.targets) target_sum += t;
    const BoundResult bound = enumerate_bounds(problem.expr, problem.scheme);
    if (target_sum < static_cast<double>(bound.min) ||
        target_sum > static_cast<double>(bound.max)) {
      verdict.certificate = bound;
    }
  }
  return verdict;
}

}  // namespace bellbound
