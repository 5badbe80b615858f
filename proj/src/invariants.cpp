#include "reflexion/invariants.hpp"

#include "reflexion/error.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace reflexion {

namespace {

// Linear forms x -> (g x)_i as polynomials.
std::vector<Poly> image_forms(const Mat& g) {
  const auto r = static_cast<int>(g.rows());
  std::vector<Poly> forms;
  for (int i = 0; i < r; ++i) {
    Poly l(unit_weights(r));
    for (int j = 0; j < r; ++j) {
      if (!g(i, j).is_zero()) {
        Exponents e(static_cast<std::size_t>(r), 0);
        e[static_cast<std::size_t>(j)] = 1;
        l.add_term(e, g(i, j));
      }
    }
    forms.push_back(std::move(l));
  }
  return forms;
}

Poly compose_linear(const Poly& f, const std::vector<Poly>& forms) {
  const std::vector<int>& target_weights = forms.front().weights();
  Poly out(target_weights);
  std::map<std::pair<int, int>, Poly> powers;
  auto power = [&](int i, int k) -> const Poly& {
    auto it = powers.find({i, k});
    if (it == powers.end()) {
      it = powers.emplace(std::pair{i, k}, forms[static_cast<std::size_t>(i)].pow(static_cast<unsigned>(k)))
               .first;
    }
    return it->second;
  };
  for (const auto& [e, c] : f.terms()) {
    Poly term = Poly::constant(target_weights, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) {
        term *= power(static_cast<int>(i), e[i]);
      }
    }
    out += term;
  }
  return out;
}

// Exponent vectors of linear degree d in r variables, graded-lex descending.
std::vector<Exponents> monomials_of_degree(int r, int d) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(r), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == r - 1) {
      e[static_cast<std::size_t>(pos)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(pos)] = k;
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Exponent vectors alpha with sum alpha_i w_i == t.
std::vector<Exponents> weighted_exponents(const std::vector<int>& weights, long t) {
  std::vector<Exponents> out;
  Exponents e(weights.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, long left) -> void {
    if (pos == weights.size()) {
      if (left == 0) {
        out.push_back(e);
      }
      return;
    }
    for (long k = left / weights[pos]; k >= 0; --k) {
      e[pos] = static_cast<int>(k);
      self(self, pos + 1, left - k * weights[pos]);
    }
  };
  rec(rec, 0, t);
  return out;
}

std::vector<std::vector<Cyclo>> test_points(int r, std::uint64_t seed, int random_count) {
  std::vector<std::vector<Cyclo>> pts;
  std::vector<Cyclo> p1;
  std::vector<Cyclo> p2;
  long pow3 = 1;
  for (int i = 0; i < r; ++i) {
    p1.emplace_back(i + 1);
    p2.emplace_back(pow3);
    pow3 *= 3;
  }
  pts.push_back(std::move(p1));
  pts.push_back(std::move(p2));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-50, 50);
  for (int k = 0; k < random_count; ++k) {
    std::vector<Cyclo> p;
    for (int i = 0; i < r; ++i) {
      p.emplace_back(dist(rng));
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

} // namespace

Poly reynolds(const ReflectionGroup& w, const Exponents& exps) {
  if (static_cast<int>(exps.size()) != w.rank()) {
    throw InvalidInput("monomial has the wrong number of variables");
  }
  const Poly mono = Poly::monomial(unit_weights(w.rank()), exps);
  Poly sum(unit_weights(w.rank()));
  for (const Mat& g : w.group.elements()) {
    sum += compose_linear(mono, image_forms(g));
  }
  return sum.scaled(Cyclo(Rational(1, w.order())));
}

bool is_invariant(const ReflectionGroup& w, const Poly& f) {
  for (const Mat& g : w.group.generators()) {
    if (compose_linear(f, image_forms(g)) != f) {
      return false;
    }
  }
  return true;
}

bool jacobian_full_rank(const std::vector<Poly>& polys, std::uint64_t seed) {
  if (polys.empty()) {
    return true;
  }
  const int r = polys.front().nvars();
  std::vector<std::vector<Poly>> partials;
  for (const Poly& f : polys) {
    std::vector<Poly> row;
    for (int j = 0; j < r; ++j) {
      row.push_back(f.derivative(j));
    }
    partials.push_back(std::move(row));
  }
  for (const auto& pt : test_points(r, seed, 4)) {
    Mat jac(static_cast<Eigen::Index>(polys.size()), r);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      for (int j = 0; j < r; ++j) {
        jac(static_cast<Eigen::Index>(i), j) = partials[i][static_cast<std::size_t>(j)].evaluate(pt);
      }
    }
    if (exact_rank(jac) == static_cast<Eigen::Index>(polys.size())) {
      return true;
    }
  }
  return false;
}

std::vector<Poly> basic_invariants(const ReflectionGroup& w, std::uint64_t seed) {
  const int r = w.rank();
  std::vector<Poly> chosen;
  for (int d : w.degrees) {
    std::vector<Exponents> candidates;
    for (int j = 0; j < r; ++j) {
      Exponents e(static_cast<std::size_t>(r), 0);
      e[static_cast<std::size_t>(j)] = d;
      candidates.push_back(std::move(e));
    }
    for (auto& e : monomials_of_degree(r, d)) {
      if (std::count(e.begin(), e.end(), 0) != r - 1) {
        candidates.push_back(std::move(e));
      }
    }
    bool found = false;
    for (const Exponents& e : candidates) {
      Poly f = reynolds(w, e);
      if (f.is_zero()) {
        continue;
      }
      chosen.push_back(std::move(f));
      if (jacobian_full_rank(chosen, seed)) {
        found = true;
        break;
      }
      chosen.pop_back();
    }
    if (!found) {
      throw InvariantViolation(w.label + ": no independent invariant of degree " +
                               std::to_string(d));
    }
  }
  return chosen;
}

Poly compose(const Poly& q, const std::vector<Poly>& basics) {
  if (basics.empty()) {
    throw InvalidInput("compose needs at least one basic invariant");
  }
  return compose_linear(q, basics);
}

Poly express_in_invariants(const std::vector<Poly>& basics, const Poly& target,
                           std::uint64_t seed) {
  if (basics.empty()) {
    throw InvalidInput("no basic invariants given");
  }
  std::vector<int> degrees;
  for (const Poly& f : basics) {
    degrees.push_back(f.degree());
  }
  const Poly zero(degrees);
  if (target.is_zero()) {
    return zero;
  }
  const auto t_opt = target.homogeneous_weight();
  if (!t_opt) {
    throw InvalidInput("target is not homogeneous");
  }
  const auto exps = weighted_exponents(degrees, *t_opt);
  if (exps.empty()) {
    throw InvariantViolation("no monomial in the basics has degree " + std::to_string(*t_opt));
  }
  const auto k = static_cast<Eigen::Index>(exps.size());
  const int r = target.nvars();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-30, 30);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat a(2 * k, k);
    Vec b(2 * k);
    for (Eigen::Index row = 0; row < 2 * k; ++row) {
      std::vector<Cyclo> pt;
      for (int i = 0; i < r; ++i) {
        pt.emplace_back(dist(rng));
      }
      std::vector<Cyclo> fv;
      for (const Poly& f : basics) {
        fv.push_back(f.evaluate(pt));
      }
      for (Eigen::Index col = 0; col < k; ++col) {
        Cyclo v(1);
        const Exponents& e = exps[static_cast<std::size_t>(col)];
        for (std::size_t i = 0; i < e.size(); ++i) {
          for (int p = 0; p < e[i]; ++p) {
            v *= fv[i];
          }
        }
        a(row, col) = v;
      }
      b(row) = target.evaluate(pt);
    }
    std::optional<Vec> x;
    try {
      x = solve_exact(a, b);
    } catch (const InvariantViolation&) {
      continue; // unlucky points: dependent columns
    }
    if (!x) {
      throw InvariantViolation("target is not a polynomial in the basic invariants");
    }
    Poly q(degrees);
    for (Eigen::Index col = 0; col < k; ++col) {
      q.add_term(exps[static_cast<std::size_t>(col)], (*x)(col));
    }
    if (compose(q, basics) != target) {
      throw InvariantViolation("symbolic verification of the invariant expression failed");
    }
    return q;
  }
  throw InvariantViolation("evaluation points never separated the candidate monomials");
}

Poly hyperplane_product(const ReflectionGroup& w) {
  const int r = w.rank();
  Poly prod = Poly::constant(unit_weights(r), Cyclo(1));
  for (const auto& h : w.arrangement.hyperplanes) {
    Poly l(unit_weights(r));
    for (int j = 0; j < r; ++j) {
      Exponents e(static_cast<std::size_t>(r), 0);
      e[static_cast<std::size_t>(j)] = 1;
      l.add_term(e, h.form(j));
    }
    prod *= l.pow(static_cast<unsigned>(h.order));
  }
  return prod;
}

void check_discriminant(const InvariantSystem& sys) {
  const Poly& delta = sys.discriminant;
  if (delta.is_zero()) {
    throw InvariantViolation(sys.label + ": discriminant is zero");
  }
  if (delta.weights() != sys.degrees) {
    throw InvariantViolation(sys.label + ": discriminant weights differ from the degrees");
  }
  if (delta.homogeneous_weight() != sys.weight()) {
    throw InvariantViolation(sys.label + ": discriminant is not weighted homogeneous of weight N+N*");
  }
  if (!squarefree_check(delta)) {
    throw InvariantViolation(sys.label + ": discriminant is not reduced");
  }
  const long dr = sys.degrees.back();
  if (static_cast<long>(delta.valuation()) * dr < sys.weight()) {
    throw InvariantViolation(sys.label + ": discriminant valuation below (N+N*)/d_r");
  }
}

InvariantSystem discriminant_with_basics(const ReflectionGroup& w, std::vector<Poly> basics) {
  InvariantSystem sys;
  sys.label = w.label;
  sys.degrees = w.degrees;
  sys.codegrees = w.codegrees;
  sys.N = w.N;
  sys.Nstar = w.Nstar;
  sys.discriminant = express_in_invariants(basics, hyperplane_product(w));
  sys.basics = std::move(basics);
  check_discriminant(sys);
  return sys;
}

InvariantSystem discriminant(const ReflectionGroup& w) {
  return discriminant_with_basics(w, basic_invariants(w));
}

} // namespace reflexion
