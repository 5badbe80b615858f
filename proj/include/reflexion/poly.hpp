#pragma once

#include "reflexion/cyclo.hpp"
#include "reflexion/error.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace reflexion {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over Q(zeta_m) with an attached weight system.
///
/// Terms are kept in a map keyed by exponent vector (lexicographic order,
/// X_1 most significant). No stored coefficient is ever zero. Two polynomials
/// can be combined only if their weight vectors are identical.
class Poly {
public:
  using TermMap = std::map<Exponents, Cyclo>;

  Poly() = default;
  explicit Poly(std::vector<int> weights) : weights_(std::move(weights)) {}

  static Poly constant(std::vector<int> weights, const Cyclo& value);
  static Poly variable(std::vector<int> weights, int index);
  static Poly monomial(std::vector<int> weights, Exponents exps, const Cyclo& coeff = Cyclo(1));

  int nvars() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& weights() const { return weights_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// True for the zero polynomial and for nonzero scalars.
  bool is_constant() const;
  /// Coefficient of the given monomial (zero when absent).
  Cyclo coefficient(const Exponents& exps) const;

  /// Adds `coeff * X^exps`, removing the term if it cancels.
  void add_term(const Exponents& exps, const Cyclo& coeff);

  /// Maximum linear degree over the terms. Throws on the zero polynomial.
  int degree() const;
  /// Minimum linear degree over the terms. Throws on the zero polynomial.
  int valuation() const;
  /// Largest exponent of X_i; 0 for a polynomial not involving X_i, -1 for zero.
  int degree_in(int i) const;

  long weight_of(const Exponents& exps) const;
  /// Common weighted degree of all terms, or nullopt if not weighted homogeneous.
  /// The zero polynomial has no weight.
  std::optional<long> homogeneous_weight() const;

  /// lcm of the conductors of all coefficients (1 for rational polynomials).
  int conductor() const;

  /// Leading term for graded-lex order with X_1 > ... > X_r.
  const std::pair<const Exponents, Cyclo>& leading_term_grlex() const;
  /// Leading term for pure lex order with X_1 > ... > X_r.
  const std::pair<const Exponents, Cyclo>& leading_term_lex() const;

  Poly derivative(int i) const;
  Poly pow(unsigned k) const;
  Poly scaled(const Cyclo& c) const;

  Cyclo evaluate(std::span<const Cyclo> point) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.weights_ == b.weights_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Pretty form using X1..Xr, terms in decreasing graded-lex order.
  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& names) const;

private:
  void require_compatible(const Poly& other) const;

  std::vector<int> weights_;
  TermMap terms_;
};

/// Weight vector (1, ..., 1) for the ambient linear grading.
std::vector<int> unit_weights(int nvars);

// --- exact-arithmetic operations ---------------------------------------------

enum class ArithOp { Add, Sub, Mul };

Poly poly_arith(const Poly& p, const Poly& q, ArithOp op);

/// P with X_i replaced by `replacement`, expanded.
Poly substitute(const Poly& p, int i, const Poly& replacement);

/// P as a polynomial in X_i with coefficients in the remaining variables.
struct UniView {
  Poly base;
  int pivot = 0;
  /// coeffs[k] multiplies X_pivot^k; each lives in the r-1 remaining variables.
  std::vector<Poly> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Poly& head() const { return coeffs.back(); }
  /// Reassembles sum_k coeffs[k] * X_pivot^k in the original variables.
  Poly reassemble() const;
};

UniView univariate_view(const Poly& p, int i);

/// Determinant of the Sylvester matrix of (A, B), rows of A first.
Poly resultant(const UniView& a, const UniView& b);

/// Res(dP/dX_i, P), a polynomial in the r-1 remaining variables.
Poly disc_wrt(const Poly& p, int i);

/// Normalized gcd of the coefficients of P viewed in X_i; lives in the r-1
/// remaining variables.
Poly coeff_gcd(const Poly& p, int i);

/// True iff P has no repeated factor.
bool squarefree_check(const Poly& p);

/// Normalized gcd of two polynomials with identical weights.
Poly gcd(const Poly& a, const Poly& b);

/// Quotient if `b` divides `a` exactly, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// P divided by its graded-lex leading coefficient. Zero stays zero.
Poly make_monic(const Poly& p);

/// Removes X_i; P must not involve X_i.
Poly drop_variable(const Poly& p, int i);
/// Inserts a new variable at position i with the given weight.
Poly insert_variable(const Poly& p, int i, int weight);

/// The univariate polynomial t -> P(..., t at X_i, ..., y elsewhere).
/// `y` lists the values of the other variables in order.
Poly restrict_to_line(const Poly& p, int i, std::span<const Cyclo> y);

} // namespace reflexion
