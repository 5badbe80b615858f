#include "reflexion/cyclo.hpp"

#include "reflexion/error.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace reflexion {

namespace {

std::atomic<int> g_max_phi{64};

// x^m - 1 divided by every Phi_d with d | m, d < m.
std::vector<long> compute_cyclotomic(int m) {
  std::vector<long> num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) {
      continue;
    }
    const std::vector<long>& div = cyclotomic_polynomial(d);
    // exact division by a monic integer polynomial
    const std::size_t dn = num.size() - 1;
    const std::size_t dd = div.size() - 1;
    std::vector<long> quot(dn - dd + 1, 0);
    for (std::size_t k = dn + 1; k-- > dd;) {
      const long c = num[k];
      quot[k - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) {
        num[k - dd + j] -= c * div[j];
      }
    }
    num = std::move(quot);
  }
  return num;
}

// Reduce a dense polynomial in zeta_m modulo Phi_m, in place.
void reduce_mod_cyclotomic(std::vector<Rational>& poly, int m) {
  const std::vector<long>& phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (sgn(poly[k]) == 0) {
      continue;
    }
    const Rational c = poly[k];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] != 0) {
        poly[k - deg + j] -= c * phi[j];
      }
    }
    poly[k] = 0;
  }
  poly.resize(deg);
}

void check_phi(int m) {
  if (euler_phi(m) > g_max_phi.load()) {
    throw CapExceeded("cyclotomic conductor " + std::to_string(m) + " exceeds phi bound " +
                      std::to_string(g_max_phi.load()));
  }
}

} // namespace

int euler_phi(int m) {
  int result = m;
  int n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) {
        n /= p;
      }
      result -= result / p;
    }
  }
  if (n > 1) {
    result -= result / n;
  }
  return result;
}

const std::vector<long>& cyclotomic_polynomial(int m) {
  static std::mutex mutex;
  static std::map<int, std::vector<long>> cache;
  if (m < 1) {
    throw ParseError("conductor must be positive");
  }
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) {
      return it->second;
    }
  }
  std::vector<long> poly;
  if (m == 1) {
    poly = {-1, 1};
  } else {
    poly = compute_cyclotomic(m);
  }
  std::lock_guard lock(mutex);
  // std::map never invalidates references on insert
  return cache.emplace(m, std::move(poly)).first->second;
}

int max_phi() { return g_max_phi.load(); }

void set_max_phi(int bound) { g_max_phi.store(bound); }

int common_conductor(int a, int b) { return std::lcm(a, b); }

Cyclo::Cyclo(int conductor, std::vector<Rational> coords)
    : conductor_(conductor), coords_(std::move(coords)) {
  if (conductor_ < 1) {
    throw ParseError("conductor must be positive");
  }
  check_phi(conductor_);
  for (auto& q : coords_) {
    q.canonicalize();
  }
  const auto phi = static_cast<std::size_t>(euler_phi(conductor_));
  if (coords_.size() > phi) {
    reduce_mod_cyclotomic(coords_, conductor_);
  }
  coords_.resize(phi);
}

Cyclo Cyclo::zeta(int m, long k) {
  check_phi(m);
  const long e = ((k % m) + m) % m;
  std::vector<Rational> poly(static_cast<std::size_t>(e) + 1);
  poly[static_cast<std::size_t>(e)] = 1;
  return Cyclo(m, std::move(poly));
}

Cyclo Cyclo::rational_in(int m, const Rational& value) {
  std::vector<Rational> c(1, value);
  return Cyclo(m, std::move(c));
}

bool Cyclo::is_zero() const {
  for (const auto& c : coords_) {
    if (sgn(c) != 0) {
      return false;
    }
  }
  return true;
}

bool Cyclo::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (sgn(coords_[i]) != 0) {
      return false;
    }
  }
  return true;
}

Rational Cyclo::to_rational() const {
  if (!is_rational()) {
    throw InvariantViolation("scalar " + to_string() + " is not rational");
  }
  return coords_[0];
}

Cyclo Cyclo::lifted(int target) const {
  if (target == conductor_) {
    return *this;
  }
  if (target % conductor_ != 0) {
    throw InvariantViolation("cannot lift conductor " + std::to_string(conductor_) + " to " +
                             std::to_string(target));
  }
  check_phi(target);
  if (is_rational()) {
    return rational_in(target, coords_[0]);
  }
  const std::size_t step = static_cast<std::size_t>(target / conductor_);
  std::vector<Rational> poly((coords_.size() - 1) * step + 1);
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    poly[k * step] = coords_[k];
  }
  return Cyclo(target, std::move(poly));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) {
    throw InvariantViolation("division by zero scalar");
  }
  if (is_rational()) {
    return rational_in(conductor_, 1 / coords_[0]);
  }
  // Solve (multiplication-by-this) * x = e_0 by Gauss-Jordan elimination.
  const std::size_t n = coords_.size();
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n + 1));
  std::vector<Rational> column = coords_;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      mat[i][j] = column[i];
    }
    // column <- zeta * column
    std::vector<Rational> shifted(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      shifted[i + 1] = column[i];
    }
    reduce_mod_cyclotomic(shifted, conductor_);
    column = std::move(shifted);
  }
  mat[0][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(mat[pivot][col]) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      throw InvariantViolation("singular multiplication matrix in cyclotomic inverse");
    }
    std::swap(mat[pivot], mat[col]);
    const Rational inv = 1 / mat[col][col];
    for (std::size_t j = col; j <= n; ++j) {
      mat[col][j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(mat[i][col]) == 0) {
        continue;
      }
      const Rational f = mat[i][col];
      for (std::size_t j = col; j <= n; ++j) {
        mat[i][j] -= f * mat[col][j];
      }
    }
  }
  std::vector<Rational> result(n);
  for (std::size_t i = 0; i < n; ++i) {
    result[i] = mat[i][n];
  }
  return Cyclo(conductor_, std::move(result));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.coords_) {
    c = -c;
  }
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& other) {
  if (other.is_rational()) {
    coords_[0] += other.coords_[0];
    if (conductor_ != other.conductor_ && is_rational()) {
      *this = rational_in(common_conductor(conductor_, other.conductor_), coords_[0]);
    }
    return *this;
  }
  if (is_rational()) {
    Rational q = coords_[0];
    *this = other.lifted(common_conductor(conductor_, other.conductor_));
    coords_[0] += q;
    return *this;
  }
  if (conductor_ != other.conductor_) {
    const int m = common_conductor(conductor_, other.conductor_);
    *this = lifted(m);
    return *this += other.lifted(m);
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    coords_[i] += other.coords_[i];
  }
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& other) { return *this += -other; }

Cyclo& Cyclo::operator*=(const Cyclo& other) {
  if (other.is_rational()) {
    const Rational q = other.coords_[0];
    for (auto& c : coords_) {
      c *= q;
    }
    if (conductor_ != other.conductor_ && is_rational()) {
      *this = rational_in(common_conductor(conductor_, other.conductor_), coords_[0]);
    }
    return *this;
  }
  if (is_rational()) {
    const Rational q = coords_[0];
    *this = other.lifted(common_conductor(conductor_, other.conductor_));
    for (auto& c : coords_) {
      c *= q;
    }
    return *this;
  }
  if (conductor_ != other.conductor_) {
    const int m = common_conductor(conductor_, other.conductor_);
    *this = lifted(m);
    return *this *= other.lifted(m);
  }
  std::vector<Rational> prod(coords_.size() * 2 - 1);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (sgn(coords_[i]) == 0) {
      continue;
    }
    for (std::size_t j = 0; j < other.coords_.size(); ++j) {
      if (sgn(other.coords_[j]) != 0) {
        prod[i + j] += coords_[i] * other.coords_[j];
      }
    }
  }
  reduce_mod_cyclotomic(prod, conductor_);
  coords_ = std::move(prod);
  return *this;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ == b.conductor_) {
    return a.coords_ == b.coords_;
  }
  const bool ra = a.is_rational();
  const bool rb = b.is_rational();
  if (ra || rb) {
    return ra && rb && a.coords_[0] == b.coords_[0];
  }
  const int m = common_conductor(a.conductor_, b.conductor_);
  return a.lifted(m).coords_ == b.lifted(m).coords_;
}

std::size_t Cyclo::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor_) * 0x9e3779b97f4a7c15ULL;
  for (const auto& c : coords_) {
    const auto num = static_cast<std::size_t>(mpz_get_si(c.get_num_mpz_t()));
    const auto den = static_cast<std::size_t>(mpz_get_si(c.get_den_mpz_t()));
    h ^= num + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= den + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Cyclo::to_string() const {
  if (is_rational()) {
    return coords_[0].get_str();
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coords_.size(); k-- > 0;) {
    const Rational& c = coords_[k];
    if (sgn(c) == 0) {
      continue;
    }
    if (!first) {
      os << (sgn(c) > 0 ? "+" : "-");
    } else if (sgn(c) < 0) {
      os << "-";
    }
    first = false;
    const Rational mag = abs(c);
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) {
      os << mag.get_str() << "*";
    }
    os << "z" << conductor_;
    if (k > 1) {
      os << "^" << k;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.to_string(); }

} // namespace reflexion
