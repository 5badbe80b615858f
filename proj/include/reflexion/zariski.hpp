#pragma once

#include "reflexion/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reflexion {

enum class LineClass { Generic, Bad, Better };

std::string to_string(LineClass c);

/// Classifies the line of direction X_i through y (values of the other
/// variables, in order). Generic lines are checked to meet P in deg_in(P, i)
/// distinct points.
LineClass classify_line(const Poly& p, int i, std::span<const Cyclo> y);

/// Integer tuples ordered by height in the sequence 0, 1, -1, 2, -2, ...;
/// within a height, lexicographically. After `random_after` tuples, seeded
/// random tuples are produced instead.
class IntegerTupleSearch {
public:
  IntegerTupleSearch(int dim, std::uint64_t seed = 0, long random_after = 100000);

  /// Next tuple, or nullopt once a zero-dimensional search has produced its single tuple.
  std::optional<std::vector<long>> next();

private:
  bool advance();

  int dim_;
  long produced_ = 0;
  long random_after_;
  int height_ = 0;
  std::vector<int> index_;
  bool started_ = false;
  std::uint64_t state_;
};

/// Value at position k of 0, 1, -1, 2, -2, ...
long integer_sequence(int k);

/// First y (integer coordinates, search order above) on which the line of
/// direction X_i is generic. Throws CapExceeded after `budget` points.
std::vector<Cyclo> find_generic_line(const Poly& p, int i, std::uint64_t seed = 0,
                                     long budget = 1000000);

/// True iff the coefficients of P viewed in X_i have a scalar gcd.
bool coprime_hypothesis(const Poly& p, int i);

/// A permutation lists variables by decreasing priority: sigma[0] is compared first.
using Permutation = std::vector<int>;

/// The <=_sigma maximal exponent vector of P.
Exponents sigma_maximum(const Poly& p, const Permutation& sigma);

struct DominantMonomial {
  Exponents exps;
  /// First permutation (in lexicographic order) for which exps is the maximum.
  Permutation witness;
};

/// Union over all permutations of the sigma-maximal monomials, sorted by exponent vector.
std::vector<DominantMonomial> dominant_monomials(const Poly& p);

struct RecursionStep {
  /// Pivot in the variable numbering of the input polynomial.
  int pivot = 0;
  int local_degree = 0;
  Poly head;
  /// Input-numbered variables the head coefficient lives in.
  std::vector<int> head_variables;
};

struct RecursionTrace {
  std::vector<RecursionStep> steps;
  int total = 0;
};

/// Peels off the sigma-leading variable, recording its degree and head
/// coefficient, until the head is a scalar. Checks that M is sigma-dominant
/// and that hd(P_X) divides Disc(P_X) at every level.
RecursionTrace generator_bound(const Poly& p, const Exponents& m, const Permutation& sigma);

/// Drops every term involving a variable of J and removes those variables.
Poly restrict_discriminant(const Poly& p, const std::vector<int>& j);

} // namespace reflexion
