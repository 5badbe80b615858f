#pragma once

#include "reflexion/groups.hpp"
#include "reflexion/poly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace reflexion {

/// Basic invariants f_1..f_r of a reflection group and the discriminant
/// Delta_f in X_1..X_r (weights = degrees) with Delta_f(f) = prod_H l_H^{e_H}.
struct InvariantSystem {
  std::string label;
  std::vector<int> degrees;
  std::vector<int> codegrees;
  long N = 0;
  long Nstar = 0;
  /// In the ambient coordinates x_1..x_r, unit weights.
  std::vector<Poly> basics;
  Poly discriminant;

  int rank() const { return static_cast<int>(degrees.size()); }
  long weight() const { return N + Nstar; }
};

/// (1/|W|) sum_w (x^exps o w).
Poly reynolds(const ReflectionGroup& w, const Exponents& exps);

/// f o g == f for every generator g.
bool is_invariant(const ReflectionGroup& w, const Poly& f);

/// One Reynolds image per degree, algebraically independent, ordered by degree.
std::vector<Poly> basic_invariants(const ReflectionGroup& w, std::uint64_t seed = 0x5eed);

/// True if the Jacobian of `polys` has full row rank at some test point.
bool jacobian_full_rank(const std::vector<Poly>& polys, std::uint64_t seed = 0x5eed);

/// Q with weights = degrees of `basics` and Q(f_1, ..., f_r) = target.
Poly express_in_invariants(const std::vector<Poly>& basics, const Poly& target,
                           std::uint64_t seed = 0x5eed);

/// Q(f_1, ..., f_r) expanded in the ambient variables.
Poly compose(const Poly& q, const std::vector<Poly>& basics);

/// prod_H l_H^{e_H} in the ambient variables.
Poly hyperplane_product(const ReflectionGroup& w);

/// Basic invariants and discriminant, with every system invariant asserted.
InvariantSystem discriminant(const ReflectionGroup& w);

/// Assembles a system from given basics (which must be basic invariants of w).
InvariantSystem discriminant_with_basics(const ReflectionGroup& w, std::vector<Poly> basics);

/// Throws InvariantViolation if the weight, reducedness or valuation bound fails.
void check_discriminant(const InvariantSystem& sys);

} // namespace reflexion
