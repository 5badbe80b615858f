#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace reflexion {

using Rational = mpq_class;

/// Euler's totient.
int euler_phi(int m);

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(int m);

/// Upper bound on phi(conductor) accepted when lifting scalars to a larger field.
int max_phi();
void set_max_phi(int bound);

/// Exact element of the cyclotomic field Q(zeta_m).
///
/// Stored as the phi(m) rational coordinates of a polynomial in zeta_m of
/// degree < phi(m), reduced modulo the m-th cyclotomic polynomial. Operands
/// with different conductors are lifted to the lcm of the two conductors.
/// Rational values never force a lift.
class Cyclo {
public:
  Cyclo() : conductor_(1), coords_(1) {}

  template <std::integral I>
  Cyclo(I value) : conductor_(1), coords_(1) {
    coords_[0] = static_cast<long>(value);
  }

  Cyclo(Rational value) : conductor_(1), coords_{std::move(value)} { coords_[0].canonicalize(); }

  /// Takes ownership of coordinates in the power basis of Q(zeta_m).
  Cyclo(int conductor, std::vector<Rational> coords);

  /// zeta_m^k for any integer k.
  static Cyclo zeta(int m, long k = 1);

  /// The rational number `value` viewed inside Q(zeta_m).
  static Cyclo rational_in(int m, const Rational& value);

  int conductor() const { return conductor_; }
  std::span<const Rational> coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  bool is_one() const { return is_rational() && coords_[0] == 1; }
  Rational to_rational() const;

  /// Same value expressed over Q(zeta_target); requires conductor() | target.
  Cyclo lifted(int target) const;

  Cyclo inverse() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& other);
  Cyclo& operator-=(const Cyclo& other);
  Cyclo& operator*=(const Cyclo& other);
  Cyclo& operator/=(const Cyclo& other) { return *this *= other.inverse(); }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Hash of the stored representation; equal values share a hash only when
  /// they are stored at the same conductor.
  std::size_t hash() const;

  /// Human readable form, e.g. `3/2`, `-z^2+1/2*z` with z = zeta_m.
  std::string to_string() const;

private:
  int conductor_;
  std::vector<Rational> coords_;
};

std::ostream& operator<<(std::ostream& os, const Cyclo& c);

inline bool is_zero(const Cyclo& c) { return c.is_zero(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Smallest common conductor of two scalars.
int common_conductor(int a, int b);

} // namespace reflexion

namespace Eigen {

template <>
struct NumTraits<reflexion::Cyclo> : GenericNumTraits<reflexion::Cyclo> {
  using Real = reflexion::Cyclo;
  using NonInteger = reflexion::Cyclo;
  using Nested = reflexion::Cyclo;
  using Literal = reflexion::Cyclo;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 50
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

} // namespace Eigen
