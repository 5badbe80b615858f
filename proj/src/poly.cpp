#include "reflexion/poly.hpp"

#include "reflexion/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace reflexion {

namespace {

int linear_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool grlex_less(const Exponents& a, const Exponents& b) {
  const int da = linear_degree(a);
  const int db = linear_degree(b);
  if (da != db) {
    return da < db;
  }
  return a < b;
}

bool involves(const Poly& p, int v) {
  for (const auto& [e, c] : p.terms()) {
    if (e[static_cast<std::size_t>(v)] > 0) {
      return true;
    }
  }
  return false;
}

// Coefficients of p in X_v, kept in the same variables (exponent of X_v zeroed).
std::vector<Poly> coeffs_in(const Poly& p, int v) {
  const int deg = p.degree_in(v);
  std::vector<Poly> out(static_cast<std::size_t>(std::max(deg, 0)) + 1, Poly(p.weights()));
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    const int k = f[static_cast<std::size_t>(v)];
    f[static_cast<std::size_t>(v)] = 0;
    out[static_cast<std::size_t>(k)].add_term(f, c);
  }
  return out;
}

Poly lc_in(const Poly& p, int v) {
  const int deg = p.degree_in(v);
  Poly out(p.weights());
  for (const auto& [e, c] : p.terms()) {
    if (e[static_cast<std::size_t>(v)] == deg) {
      Exponents f = e;
      f[static_cast<std::size_t>(v)] = 0;
      out.add_term(f, c);
    }
  }
  return out;
}

Poly shift(const Poly& p, int v, int k) {
  Poly out(p.weights());
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    f[static_cast<std::size_t>(v)] += k;
    out.add_term(f, c);
  }
  return out;
}

Poly one_like(const Poly& p) { return Poly::constant(p.weights(), Cyclo(1)); }

// Scales so the lex-leading coefficient is 1; keeps pseudo-remainder sequences
// from accumulating scalar content.
Poly unit_lex(const Poly& p) {
  if (p.is_zero()) {
    return p;
  }
  const Cyclo& lc = p.leading_term_lex().second;
  if (lc.is_one()) {
    return p;
  }
  return p.scaled(lc.inverse());
}

Poly prem(const Poly& a, const Poly& b, int v) {
  const int db = b.degree_in(v);
  const Poly lcb = lc_in(b, v);
  Poly r = a;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    const int dr = r.degree_in(v);
    const Poly lcr = lc_in(r, v);
    r = lcb * r - shift(lcr, v, dr - db) * b;
  }
  return r;
}

Poly gcd_impl(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, int v) {
  Poly g(p.weights());
  for (const Poly& c : coeffs_in(p, v)) {
    if (c.is_zero()) {
      continue;
    }
    g = g.is_zero() ? c : gcd_impl(g, c);
    if (g.is_constant()) {
      return one_like(p);
    }
  }
  return unit_lex(g);
}

Poly primitive_part(const Poly& p, int v) {
  const Poly c = content_in(p, v);
  if (c.is_constant()) {
    return unit_lex(p);
  }
  auto q = divide_exact(p, c);
  if (!q) {
    throw InvariantViolation("content does not divide polynomial");
  }
  return unit_lex(*q);
}

// gcd up to a scalar; result has lex-leading coefficient 1.
Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) {
    return unit_lex(b);
  }
  if (b.is_zero()) {
    return unit_lex(a);
  }
  if (a.is_constant() || b.is_constant()) {
    return one_like(a);
  }
  int best = -1;
  int best_deg = 0;
  int only_a = -1;
  int only_b = -1;
  for (int v = 0; v < a.nvars(); ++v) {
    const int da = a.degree_in(v);
    const int db = b.degree_in(v);
    if (da > 0 && db > 0) {
      const int d = std::max(da, db);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    } else if (da > 0 && only_a < 0) {
      only_a = v;
    } else if (db > 0 && only_b < 0) {
      only_b = v;
    }
  }
  if (best < 0) {
    // no shared variable: the gcd lives in the coefficients
    if (only_a >= 0) {
      return gcd_impl(content_in(a, only_a), b);
    }
    return gcd_impl(a, content_in(b, only_b));
  }
  const int v = best;
  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly c = gcd_impl(ca, cb);
  Poly pa = primitive_part(a, v);
  Poly pb = primitive_part(b, v);
  if (pa.degree_in(v) < pb.degree_in(v)) {
    std::swap(pa, pb);
  }
  Poly g;
  while (true) {
    if (pb.is_zero()) {
      g = pa;
      break;
    }
    if (pb.degree_in(v) == 0) {
      g = one_like(a);
      break;
    }
    Poly r = prem(pa, pb, v);
    pa = std::move(pb);
    pb = r.is_zero() ? Poly(a.weights()) : primitive_part(r, v);
  }
  return unit_lex(c * g);
}

} // namespace

std::vector<int> unit_weights(int nvars) { return std::vector<int>(static_cast<std::size_t>(nvars), 1); }

Poly Poly::constant(std::vector<int> weights, const Cyclo& value) {
  Poly p(std::move(weights));
  p.add_term(Exponents(p.weights_.size(), 0), value);
  return p;
}

Poly Poly::variable(std::vector<int> weights, int index) {
  Exponents e(weights.size(), 0);
  if (index < 0 || index >= static_cast<int>(weights.size())) {
    throw InvalidInput("variable index out of range");
  }
  e[static_cast<std::size_t>(index)] = 1;
  return monomial(std::move(weights), std::move(e));
}

Poly Poly::monomial(std::vector<int> weights, Exponents exps, const Cyclo& coeff) {
  if (exps.size() != weights.size()) {
    throw InvalidInput("exponent vector length does not match nvars");
  }
  Poly p(std::move(weights));
  p.add_term(exps, coeff);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) {
    return true;
  }
  return terms_.size() == 1 && linear_degree(terms_.begin()->first) == 0;
}

Cyclo Poly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Cyclo(0) : it->second;
}

void Poly::add_term(const Exponents& exps, const Cyclo& coeff) {
  if (coeff.is_zero()) {
    return;
  }
  if (exps.size() != weights_.size()) {
    throw InvalidInput("exponent vector length does not match nvars");
  }
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

int Poly::degree() const {
  if (is_zero()) {
    throw InvalidInput("degree of the zero polynomial is undefined");
  }
  int d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, linear_degree(e));
  }
  return d;
}

int Poly::valuation() const {
  if (is_zero()) {
    throw InvalidInput("valuation of the zero polynomial is undefined");
  }
  int d = linear_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    d = std::min(d, linear_degree(e));
  }
  return d;
}

int Poly::degree_in(int i) const {
  if (is_zero()) {
    return -1;
  }
  int d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, e[static_cast<std::size_t>(i)]);
  }
  return d;
}

long Poly::weight_of(const Exponents& exps) const {
  long w = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    w += static_cast<long>(exps[i]) * weights_[i];
  }
  return w;
}

std::optional<long> Poly::homogeneous_weight() const {
  if (is_zero()) {
    return std::nullopt;
  }
  const long w = weight_of(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    if (weight_of(e) != w) {
      return std::nullopt;
    }
  }
  return w;
}

int Poly::conductor() const {
  int m = 1;
  for (const auto& [e, c] : terms_) {
    if (!c.is_rational()) {
      m = common_conductor(m, c.conductor());
    }
  }
  return m;
}

const std::pair<const Exponents, Cyclo>& Poly::leading_term_grlex() const {
  if (is_zero()) {
    throw InvalidInput("leading term of the zero polynomial");
  }
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (grlex_less(best->first, it->first)) {
      best = it;
    }
  }
  return *best;
}

const std::pair<const Exponents, Cyclo>& Poly::leading_term_lex() const {
  if (is_zero()) {
    throw InvalidInput("leading term of the zero polynomial");
  }
  return *terms_.rbegin();
}

Poly Poly::derivative(int i) const {
  Poly out(weights_);
  for (const auto& [e, c] : terms_) {
    const int k = e[static_cast<std::size_t>(i)];
    if (k == 0) {
      continue;
    }
    Exponents f = e;
    f[static_cast<std::size_t>(i)] = k - 1;
    out.add_term(f, c * Cyclo(k));
  }
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly result = Poly::constant(weights_, Cyclo(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1U) {
      result *= base;
    }
    k >>= 1U;
    if (k > 0) {
      base *= base;
    }
  }
  return result;
}

Poly Poly::scaled(const Cyclo& c) const {
  Poly out(weights_);
  if (c.is_zero()) {
    return out;
  }
  for (const auto& [e, v] : terms_) {
    out.terms_.emplace_hint(out.terms_.end(), e, v * c);
  }
  return out;
}

Cyclo Poly::evaluate(std::span<const Cyclo> point) const {
  if (static_cast<int>(point.size()) != nvars()) {
    throw InvalidInput("evaluation point has wrong dimension");
  }
  std::vector<std::vector<Cyclo>> powers(point.size());
  Cyclo total(0);
  for (const auto& [e, c] : terms_) {
    Cyclo t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto k = static_cast<std::size_t>(e[i]);
      if (k == 0) {
        continue;
      }
      auto& pw = powers[i];
      if (pw.empty()) {
        pw.emplace_back(1);
      }
      while (pw.size() <= k) {
        pw.push_back(pw.back() * point[i]);
      }
      t *= pw[k];
    }
    total += t;
  }
  return total;
}

Poly Poly::operator-() const { return scaled(Cyclo(-1)); }

void Poly::require_compatible(const Poly& other) const {
  if (weights_ != other.weights_) {
    throw InvalidInput("polynomials have different variables or weights");
  }
}

Poly& Poly::operator+=(const Poly& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) {
    add_term(e, c);
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) {
    add_term(e, -c);
  }
  return *this;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_compatible(b);
  Poly out(a.weights_);
  Exponents e(a.weights_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
      }
      auto [it, inserted] = out.terms_.try_emplace(e, ca);
      if (inserted) {
        it->second *= cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::string Poly::to_string() const {
  std::vector<std::string> names;
  for (int i = 0; i < nvars(); ++i) {
    names.push_back("X" + std::to_string(i + 1));
  }
  return to_string(names);
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (is_zero()) {
    return "0";
  }
  std::vector<const std::pair<const Exponents, Cyclo>*> order;
  for (const auto& kv : terms_) {
    order.push_back(&kv);
  }
  std::sort(order.begin(), order.end(),
            [](const auto* x, const auto* y) { return grlex_less(y->first, x->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const auto& [e, c] = *term;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) {
        continue;
      }
      if (!mono.empty()) {
        mono += "*";
      }
      mono += names[i];
      if (e[i] > 1) {
        mono += "^" + std::to_string(e[i]);
      }
    }
    std::string coeff = c.to_string();
    const bool rational = c.is_rational();
    bool negative = rational && sgn(c.to_rational()) < 0;
    if (negative) {
      coeff = (-c).to_string();
    }
    if (!rational) {
      coeff = "(" + coeff + ")";
    }
    if (first) {
      os << (negative ? "-" : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << coeff;
    } else if (coeff == "1") {
      os << mono;
    } else {
      os << coeff << "*" << mono;
    }
  }
  return os.str();
}

// --- operations ---------------------------------------------------------------

Poly poly_arith(const Poly& p, const Poly& q, ArithOp op) {
  switch (op) {
  case ArithOp::Add:
    return p + q;
  case ArithOp::Sub:
    return p - q;
  case ArithOp::Mul:
    return p * q;
  }
  throw InvalidInput("unknown arithmetic operation");
}

Poly substitute(const Poly& p, int i, const Poly& replacement) {
  if (p.weights() != replacement.weights()) {
    throw InvalidInput("substitution requires matching variables and weights");
  }
  const std::vector<Poly> coeffs = coeffs_in(p, i);
  Poly result(p.weights());
  Poly power = Poly::constant(p.weights(), Cyclo(1));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) {
      power *= replacement;
    }
    if (!coeffs[k].is_zero()) {
      result += coeffs[k] * power;
    }
  }
  return result;
}

Poly drop_variable(const Poly& p, int i) {
  std::vector<int> w = p.weights();
  w.erase(w.begin() + i);
  Poly out(std::move(w));
  for (const auto& [e, c] : p.terms()) {
    if (e[static_cast<std::size_t>(i)] != 0) {
      throw InvalidInput("cannot drop a variable the polynomial depends on");
    }
    Exponents f = e;
    f.erase(f.begin() + i);
    out.add_term(f, c);
  }
  return out;
}

Poly insert_variable(const Poly& p, int i, int weight) {
  std::vector<int> w = p.weights();
  w.insert(w.begin() + i, weight);
  Poly out(std::move(w));
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    f.insert(f.begin() + i, 0);
    out.add_term(f, c);
  }
  return out;
}

Poly UniView::reassemble() const {
  const int w = base.weights()[static_cast<std::size_t>(pivot)];
  Poly out(base.weights());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out += shift(insert_variable(coeffs[k], pivot, w), pivot, static_cast<int>(k));
  }
  return out;
}

UniView univariate_view(const Poly& p, int i) {
  if (p.is_zero()) {
    throw InvalidInput("univariate view of the zero polynomial");
  }
  if (i < 0 || i >= p.nvars()) {
    throw InvalidInput("pivot variable out of range");
  }
  UniView view;
  view.base = p;
  view.pivot = i;
  for (const Poly& c : coeffs_in(p, i)) {
    view.coeffs.push_back(drop_variable(c, i));
  }
  return view;
}

namespace {

Poly bareiss_determinant(std::vector<std::vector<Poly>> m, const std::vector<int>& weights) {
  const std::size_t n = m.size();
  if (n == 0) {
    return Poly::constant(weights, Cyclo(1));
  }
  Poly prev = Poly::constant(weights, Cyclo(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) {
        ++swap_row;
      }
      if (swap_row == n) {
        return Poly(weights);
      }
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        if (prev.is_constant()) {
          m[i][j] = num.scaled(prev.terms().begin()->second.inverse());
        } else {
          auto q = divide_exact(num, prev);
          if (!q) {
            throw InvariantViolation("fraction-free elimination produced a non-exact quotient");
          }
          m[i][j] = std::move(*q);
        }
      }
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

} // namespace

Poly resultant(const UniView& a, const UniView& b) {
  if (a.pivot != b.pivot || a.base.weights() != b.base.weights()) {
    throw InvalidInput("resultant requires views on the same pivot and variables");
  }
  const int da = a.degree();
  const int db = b.degree();
  if (da == 0 && db == 0) {
    throw InvalidInput("resultant of two polynomials constant in the pivot is undefined");
  }
  const std::vector<int>& weights = a.head().weights();
  const auto n = static_cast<std::size_t>(da + db);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(weights)));
  // db rows of A, then da rows of B; coefficients from the highest power down
  for (std::size_t row = 0; row < static_cast<std::size_t>(db); ++row) {
    for (int k = 0; k <= da; ++k) {
      m[row][row + static_cast<std::size_t>(da - k)] = a.coeffs[static_cast<std::size_t>(k)];
    }
  }
  for (std::size_t row = 0; row < static_cast<std::size_t>(da); ++row) {
    for (int k = 0; k <= db; ++k) {
      m[static_cast<std::size_t>(db) + row][row + static_cast<std::size_t>(db - k)] =
          b.coeffs[static_cast<std::size_t>(k)];
    }
  }
  return bareiss_determinant(std::move(m), weights);
}

Poly disc_wrt(const Poly& p, int i) {
  if (p.is_zero() || p.degree_in(i) < 1) {
    throw InvalidInput("discriminant requires positive degree in the pivot");
  }
  return resultant(univariate_view(p.derivative(i), i), univariate_view(p, i));
}

Poly coeff_gcd(const Poly& p, int i) {
  const UniView view = univariate_view(p, i);
  Poly g(view.head().weights());
  for (const Poly& c : view.coeffs) {
    if (c.is_zero()) {
      continue;
    }
    g = g.is_zero() ? c : gcd(g, c);
    if (g.is_constant()) {
      break;
    }
  }
  return make_monic(g);
}

bool squarefree_check(const Poly& p) {
  if (p.is_zero()) {
    throw InvalidInput("squarefree check of the zero polynomial");
  }
  Poly g = p;
  for (int i = 0; i < p.nvars() && !g.is_constant(); ++i) {
    if (p.degree_in(i) < 1) {
      continue;
    }
    g = gcd_impl(g, p.derivative(i));
  }
  return g.is_constant();
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.weights() != b.weights()) {
    throw InvalidInput("gcd requires matching variables and weights");
  }
  if (a.is_zero() && b.is_zero()) {
    return a;
  }
  return make_monic(gcd_impl(a, b));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) {
    throw InvalidInput("division by the zero polynomial");
  }
  if (a.weights() != b.weights()) {
    throw InvalidInput("division requires matching variables and weights");
  }
  const auto& [lb_exp, lb_coeff] = b.leading_term_lex();
  const Cyclo lb_inv = lb_coeff.inverse();
  Poly q(a.weights());
  Poly r = a;
  Exponents e(lb_exp.size());
  while (!r.is_zero()) {
    const auto& [lr_exp, lr_coeff] = r.leading_term_lex();
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lr_exp[i] - lb_exp[i];
      if (e[i] < 0) {
        return std::nullopt;
      }
    }
    const Poly t = Poly::monomial(a.weights(), e, lr_coeff * lb_inv);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) {
    return p;
  }
  const Cyclo& lc = p.leading_term_grlex().second;
  return lc.is_one() ? p : p.scaled(lc.inverse());
}

Poly restrict_to_line(const Poly& p, int i, std::span<const Cyclo> y) {
  if (static_cast<int>(y.size()) + 1 != p.nvars()) {
    throw InvalidInput("line parameter has wrong dimension");
  }
  const UniView view = univariate_view(p, i);
  Poly out(std::vector<int>{p.weights()[static_cast<std::size_t>(i)]});
  for (std::size_t k = 0; k < view.coeffs.size(); ++k) {
    out.add_term(Exponents{static_cast<int>(k)}, view.coeffs[k].evaluate(y));
  }
  return out;
}

} // namespace reflexion
