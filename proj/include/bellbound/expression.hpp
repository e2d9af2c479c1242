#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bellbound {

/// One factor of a product term: which setting is measured and which station
/// role performs the measurement.
struct TermSlot {
  std::string setting;
  std::string station;

  friend bool operator==(const TermSlot&, const TermSlot&) = default;
};

/// A product of +/-1 factors. Coefficient is fixed at +1.
struct Term {
  std::vector<TermSlot> slots;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A sum of product terms, e.g. A_a A_b + A_a A_c + A_b A_c.
struct Expression {
  std::vector<Term> terms;

  std::size_t term_count() const { return terms.size(); }

  friend bool operator==(const Expression&, const Expression&) = default;
};

/// Slot template used by schedules; identical payload to a slot but carries
/// its own (term, slot) position so event lists can be enumerated from it.
struct SlotTemplate {
  std::size_t term = 0;
  std::size_t slot = 0;
  std::string setting;
  std::string station;

  friend bool operator==(const SlotTemplate&, const SlotTemplate&) = default;
};

/// Three-station form: (a@Lille, b@Lyon) + (a@Lille, c@Paris) + (b@Lyon, c@Paris).
Expression lg_three_station();

/// Two-station form: (a@Lille, b@Lyon) + (a@Lille, c@Lyon) + (b@Lille, c@Lyon).
Expression lg_two_station();

/// Pair expression over two stations with three alternating setting pairs:
/// (a@Alice, b@Bob) + (a@Alice, c@Bob) + (b@Alice, c@Bob).
Expression singlet_pair_expression();

}  // namespace bellbound
