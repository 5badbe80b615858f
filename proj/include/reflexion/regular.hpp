#pragma once

#include "reflexion/groups.hpp"
#include "reflexion/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reflexion {

/// Indices j with d not dividing d_j.
std::vector<int> nondividing_indices(const std::vector<int>& degrees, int d);

/// Delta lies outside the ideal generated by X_j, j in nondividing_indices.
bool is_regular_number(const Poly& delta, const std::vector<int>& degrees, int d);

/// val(Delta) * d_r == weight(Delta).
bool regular_via_valuation(const Poly& delta, const std::vector<int>& degrees);

struct MonicizeResult {
  InvariantSystem system;
  /// a_i for every variable; zero where no substitution was made.
  std::vector<long> coefficients;
};

/// New basics f'_i = f_i - a_i f_{i0}^{d_i/d} making Delta monic in X_{i0}.
/// Throws NotRegular when d_{i0} is not a regular number.
MonicizeResult monicize(const InvariantSystem& sys, int i0, long budget = 1000000);

/// Elements w (as indices) with ker(w - zeta_d) outside every reflecting hyperplane.
std::vector<std::size_t> regular_elements_bruteforce(const ReflectionGroup& w, int d);

/// Eigenvalue description of a zeta_d-regular element c. With lambda the
/// eigenvalue of c on its regular eigenvector (lambda = zeta_d here), the
/// eigenvalues of c are lambda^{-(d_i - 1)} and those of c^{-1} are
/// lambda^{-(d*_i + 1)}.
bool springer_eigenvalue_check(const ReflectionGroup& w, std::size_t c, int d);

/// Characteristic polynomial of `m` equals prod (t - zeta_d^{e}) over `exps`.
bool eigenvalues_are_powers(const Mat& m, int d, const std::vector<long>& exps);

/// d divides as many degrees as codegrees.
bool lehrer_springer_check(int d, const std::vector<int>& degrees, const std::vector<int>& codegrees);

/// ceil((N + N*) / d_r).
long generator_lower_bound(const std::vector<int>& degrees, const std::vector<int>& codegrees);

/// True if the reflections with the given element indices generate w.
bool generates(const ReflectionGroup& w, const std::vector<std::size_t>& elements);

/// Smallest k such that some k reflections generate W, searched from `start`
/// (default: the lower bound) upwards.
long min_reflection_generators(const ReflectionGroup& w, const Limits& limits = {},
                               std::optional<long> start = std::nullopt);

enum class Witness { Witnessed, Unverified };
std::string to_string(Witness w);

struct OrlikSolomonReport {
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  /// min_reflection_generators == r from matrices, or the formula for table data.
  bool cond_iv = false;
  bool cond_iv_from_matrices = false;
  Witness cond_v = Witness::Unverified;
  /// Reflection indices of the witness for (v), if any.
  std::vector<std::size_t> witness;
  bool consistent = false;
};

/// Orlik-Solomon conditions from matrices (with DFS witness search for (v)).
OrlikSolomonReport orlik_solomon_report(const ReflectionGroup& w, const Limits& limits = {});
/// Arithmetic-only report for table data.
OrlikSolomonReport orlik_solomon_report(const ExceptionalData& data);

/// n = (N + N*)/d for a regular degree d. Regularity is decided by the
/// Lehrer-Springer count.
long theorem_n(const std::vector<int>& degrees, const std::vector<int>& codegrees, int d);
/// Same, with regularity decided from the discriminant.
long theorem_n(const InvariantSystem& sys, int d);

struct RegularityRow {
  int d = 1;
  /// Unset for table data, which has no discriminant.
  std::optional<bool> symbolic;
  std::optional<bool> valuation_test;
  bool lehrer_springer = false;
  std::optional<bool> brute_force;
  std::vector<std::size_t> witnesses;
  std::optional<long> n;
};

/// Candidate d: divisors of lcm(degrees), plus element orders when matrices are known.
std::vector<int> candidate_numbers(const std::vector<int>& degrees, const ReflectionGroup* w);

/// One row per candidate; throws InvariantViolation if the tests disagree.
std::vector<RegularityRow> regular_report(const ReflectionGroup& w, const InvariantSystem& sys);
/// Lehrer-Springer column only.
std::vector<RegularityRow> regular_report(const ExceptionalData& data);

} // namespace reflexion
