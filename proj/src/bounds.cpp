#include "bellbound/bounds.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace bellbound {

std::vector<std::string> expression_variables(const Expression& expr,
                                              LabelingScheme scheme) {
  std::vector<std::string> variables;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& term_labels : slot_labels(expr, scheme)) {
    for (const auto& key : term_labels) {
      if (index.emplace(key, variables.size()).second) {
        variables.push_back(key);
      }
    }
  }
  return variables;
}

int evaluate(const Expression& expr, LabelingScheme scheme,
             const std::map<std::string, int>& assignment) {
  const auto labels = slot_labels(expr, scheme);
  int sum = 0;
  for (const auto& term_labels : labels) {
    int product = 1;
    for (const auto& key : term_labels) {
      auto it = assignment.find(key);
      if (it == assignment.end()) {
        throw std::out_of_range("assignment missing variable '" + key + "'");
      }
      product *= it->second;
    }
    sum += product;
  }
  return sum;
}

namespace {

inline int evaluate_masks(const std::vector<std::uint32_t>& masks,
                          std::uint32_t assignment) {
  int sum = 0;
  for (std::uint32_t mask : masks) {
    sum += 1 - 2 * (std::popcount(assignment & mask) & 1);
  }
  return sum;
}

}  // namespace

BoundResult enumerate_bounds(const Expression& expr, LabelingScheme scheme,
                             std::size_t cap) {
  const auto variables = expression_variables(expr, scheme);
  const std::size_t v = variables.size();
  // 31 is the representation ceiling for the bitmask enumeration.
  const std::size_t effective_cap = std::min<std::size_t>(cap, 31);
  if (v > effective_cap) {
    throw CapacityError(v, effective_cap);
  }

  // Variable multiplicity inside a term only matters mod 2, so each term
  // reduces to an XOR mask over variable bits: the term's value under
  // assignment bits `a` is 1 - 2*parity(a & mask).
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < v; ++i) index.emplace(variables[i], i);
  std::vector<std::uint32_t> term_masks;
  for (const auto& term_labels : slot_labels(expr, scheme)) {
    std::uint32_t mask = 0;
    for (const auto& key : term_labels) {
      mask ^= (1u << index.at(key));
    }
    term_masks.push_back(mask);
  }
  const int term_count = static_cast<int>(expr.terms.size());

  BoundResult result;
  result.trivial_min = -term_count;
  result.trivial_max = term_count;
  result.variable_count = v;

  int min = term_count;
  int max = -term_count;
  std::uint32_t argmin = 0;
  const std::uint64_t total = 1ull << v;
  for (std::uint64_t a = 0; a < total; ++a) {
    const int value = evaluate_masks(term_masks, static_cast<std::uint32_t>(a));
    if (value < min) {
      min = value;
      argmin = static_cast<std::uint32_t>(a);
    }
    if (value > max) {
      max = value;
    }
  }
  result.min = min;
  result.max = max;
  result.nontrivial = min > result.trivial_min || max < result.trivial_max;
  for (std::size_t i = 0; i < v; ++i) {
    result.witness_min[variables[i]] = (argmin >> i) & 1 ? -1 : 1;
  }
  return result;
}

namespace {

// Incidence multigraph: variable nodes [0, v), term nodes [v, v + T).
// One edge per slot occurrence. A DFS back edge exposes the cycle; the term
// nodes along it, in order, form the witness chain.
struct IncidenceGraph {
  std::size_t var_count = 0;
  std::size_t term_count = 0;
  // adjacency: node -> list of (neighbor, edge id)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;
};

std::vector<std::size_t> find_cycle_nodes(const IncidenceGraph& g) {
  const std::size_t n = g.adj.size();
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::size_t> path;

  // Iterative DFS keeping the current path; edge ids prevent walking the
  // same physical edge back (parallel edges are distinct).
  struct Frame {
    std::size_t node;
    std::size_t parent_edge;
    std::size_t next = 0;
  };
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<Frame> stack;
    stack.push_back({start, static_cast<std::size_t>(-1)});
    state[start] = 1;
    path.assign(1, start);
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next < g.adj[frame.node].size()) {
        const auto [neighbor, edge] = g.adj[frame.node][frame.next++];
        if (edge == frame.parent_edge) continue;
        if (state[neighbor] == 1) {
          // Cycle: suffix of the path from `neighbor` to the current node.
          auto it = std::find(path.begin(), path.end(), neighbor);
          return {it, path.end()};
        }
        if (state[neighbor] == 0) {
          state[neighbor] = 1;
          path.push_back(neighbor);
          stack.push_back({neighbor, edge});
        }
      } else {
        state[frame.node] = 2;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

CyclicityReport detect_cyclicity(const Expression& expr,
                                 LabelingScheme scheme) {
  const auto labels = slot_labels(expr, scheme);
  std::unordered_map<std::string, std::size_t> var_index;
  std::vector<std::vector<std::size_t>> term_vars(expr.terms.size());
  std::size_t var_count = 0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    for (const auto& key : labels[t]) {
      auto [it, inserted] = var_index.emplace(key, var_count);
      if (inserted) ++var_count;
      term_vars[t].push_back(it->second);
    }
  }

  IncidenceGraph g;
  g.var_count = var_count;
  g.term_count = expr.terms.size();
  g.adj.resize(var_count + expr.terms.size());
  std::size_t edge_id = 0;
  for (std::size_t t = 0; t < term_vars.size(); ++t) {
    const std::size_t term_node = var_count + t;
    for (std::size_t var : term_vars[t]) {
      g.adj[var].emplace_back(term_node, edge_id);
      g.adj[term_node].emplace_back(var, edge_id);
      ++edge_id;
    }
  }

  CyclicityReport report;
  const auto cycle_nodes = find_cycle_nodes(g);
  report.has_cycle = !cycle_nodes.empty();
  for (std::size_t node : cycle_nodes) {
    if (node >= var_count) {
      report.cycle_witness.push_back(node - var_count);
    }
  }
  return report;
}

}  // namespace bellbound
