#include "bellbound/expression.hpp"

namespace bellbound {

Expression lg_three_station() {
  Expression expr;
  expr.terms = {
      Term{{{"a", "Lille"}, {"b", "Lyon"}}},
      Term{{{"a", "Lille"}, {"c", "Paris"}}},
      Term{{{"b", "Lyon"}, {"c", "Paris"}}},
  };
  return expr;
}

Expression lg_two_station() {
  Expression expr;
  expr.terms = {
      Term{{{"a", "Lille"}, {"b", "Lyon"}}},
      Term{{{"a", "Lille"}, {"c", "Lyon"}}},
      Term{{{"b", "Lille"}, {"c", "Lyon"}}},
  };
  return expr;
}

Expression singlet_pair_expression() {
  Expression expr;
  expr.terms = {
      Term{{{"a", "Alice"}, {"b", "Bob"}}},
      Term{{{"a", "Alice"}, {"c", "Bob"}}},
      Term{{{"b", "Alice"}, {"c", "Bob"}}},
  };
  return expr;
}

}  // namespace bellbound
