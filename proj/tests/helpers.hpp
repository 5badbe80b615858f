#pragma once

#include "reflexion/poly.hpp"

#include <initializer_list>
#include <utility>

namespace reflexion::testing {

using Term = std::pair<Exponents, Cyclo>;

inline Poly make_poly(std::vector<int> weights, std::initializer_list<Term> terms) {
  Poly p(std::move(weights));
  for (const auto& [e, c] : terms) {
    p.add_term(e, c);
  }
  return p;
}

inline Poly make_poly(int nvars, std::initializer_list<Term> terms) {
  return make_poly(unit_weights(nvars), terms);
}

/// True if a = c * b for some nonzero scalar c.
inline bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) {
    return false;
  }
  const auto& [e, cb] = *b.terms().begin();
  const Cyclo ca = a.coefficient(e);
  if (ca.is_zero()) {
    return false;
  }
  return b.scaled(ca / cb) == a;
}

} // namespace reflexion::testing
