#include "helpers.hpp"
#include "reflexion/linalg.hpp"
#include "reflexion/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace reflexion;
using reflexion::testing::make_poly;
using reflexion::testing::proportional;

namespace {

Poly random_poly(std::mt19937& rng, int nvars, int max_deg, int nterms) {
  std::uniform_int_distribution<int> exp(0, max_deg);
  std::uniform_int_distribution<int> coeff(-5, 5);
  Poly p(unit_weights(nvars));
  for (int t = 0; t < nterms; ++t) {
    Exponents e(static_cast<std::size_t>(nvars));
    for (auto& x : e) {
      x = exp(rng);
    }
    p.add_term(e, Cyclo(coeff(rng)));
  }
  return p;
}

} // namespace

TEST(Cyclo, ZetaSatisfiesCyclotomicPolynomial) {
  for (int m : {1, 2, 3, 4, 5, 6, 8, 9, 12, 15}) {
    const auto& phi = cyclotomic_polynomial(m);
    ASSERT_EQ(static_cast<int>(phi.size()) - 1, euler_phi(m));
    Cyclo value(0);
    for (std::size_t k = 0; k < phi.size(); ++k) {
      value += Cyclo(phi[k]) * Cyclo::zeta(m, static_cast<long>(k));
    }
    EXPECT_TRUE(value.is_zero()) << "m=" << m;
    EXPECT_EQ(static_cast<int>(Cyclo::zeta(m).coords().size()), euler_phi(m));
  }
}

TEST(Cyclo, RootsOfUnitySumToZero) {
  for (int p : {2, 3, 5, 7}) {
    Cyclo s(0);
    for (int k = 0; k < p; ++k) {
      s += Cyclo::zeta(p, k);
    }
    EXPECT_TRUE(s.is_zero());
  }
  EXPECT_EQ(Cyclo::zeta(6, 3), Cyclo(-1));
  EXPECT_EQ(Cyclo::zeta(12, 4), Cyclo::zeta(3, 1));
  EXPECT_EQ(Cyclo::zeta(4, 1) * Cyclo::zeta(4, 1), Cyclo(-1));
}

TEST(Cyclo, FieldAxiomsRandomized) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(-4, 4);
  auto random_element = [&](int m) {
    Cyclo c(0);
    for (int k = 0; k < euler_phi(m); ++k) {
      c += Cyclo(Rational(small(rng), 1 + std::abs(small(rng)))) * Cyclo::zeta(m, k);
    }
    return c;
  };
  for (int trial = 0; trial < 60; ++trial) {
    const int m1 = 1 + trial % 8;
    const int m2 = 1 + (trial * 5) % 9;
    const Cyclo a = random_element(m1);
    const Cyclo b = random_element(m2);
    EXPECT_EQ((a + b) - b, a);
    if (!b.is_zero()) {
      EXPECT_EQ((a * b) / b, a);
      EXPECT_EQ(b * b.inverse(), Cyclo(1));
    }
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(Cyclo, RationalsDoNotLift) {
  const Cyclo a = Cyclo(Rational(3, 2)) * Cyclo(2);
  EXPECT_EQ(a.conductor(), 1);
  EXPECT_TRUE(a.is_rational());
  EXPECT_EQ(a.to_rational(), Rational(3));
  EXPECT_EQ((Cyclo::zeta(3) * Cyclo(2)).conductor(), 3);
  EXPECT_EQ((Cyclo::zeta(3) + Cyclo::zeta(4)).conductor(), 12);
}

TEST(Cyclo, ConductorCapThrows) {
  const int saved = max_phi();
  set_max_phi(4);
  EXPECT_THROW(Cyclo::zeta(7), CapExceeded);
  set_max_phi(saved);
  EXPECT_NO_THROW(Cyclo::zeta(7));
}

TEST(Linalg, RankDeterminantCharpoly) {
  Mat a(3, 3);
  a << Cyclo(1), Cyclo(2), Cyclo(3), Cyclo(4), Cyclo(5), Cyclo(6), Cyclo(7), Cyclo(8), Cyclo(10);
  EXPECT_EQ(exact_rank(a), 3);
  EXPECT_EQ(exact_determinant(a), Cyclo(-3));
  const auto chi = characteristic_polynomial(a);
  // det(l - a) = l^3 - 16 l^2 - 12 l + 3 ... checked through c0 = -det, c2 = -trace
  EXPECT_EQ(chi[0], Cyclo(3));
  EXPECT_EQ(chi[2], Cyclo(-16));
  EXPECT_EQ(chi[3], Cyclo(1));
  Mat b = a;
  b.row(2) = a.row(0) + a.row(1);
  EXPECT_EQ(exact_rank(b), 2);
  const Mat ker = nullspace(b);
  ASSERT_EQ(ker.cols(), 1);
  EXPECT_TRUE(matrices_equal(b * ker, Mat::Zero(3, 1)));
}

TEST(Linalg, SolveExact) {
  Mat a(3, 2);
  a << Cyclo(1), Cyclo(1), Cyclo(1), Cyclo(-1), Cyclo(2), Cyclo(0);
  Vec b(3);
  b << Cyclo(3), Cyclo(1), Cyclo(4);
  const auto x = solve_exact(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)(0), Cyclo(2));
  EXPECT_EQ((*x)(1), Cyclo(1));
  b(2) = Cyclo(5);
  EXPECT_FALSE(solve_exact(a, b).has_value());
}

TEST(Linalg, MatrixOrder) {
  Mat rot(2, 2);
  rot << Cyclo(0), Cyclo(-1), Cyclo(1), Cyclo(-1);
  EXPECT_EQ(matrix_order(rot, 10), 3);
  Mat diag = Mat::Identity(1, 1);
  diag(0, 0) = Cyclo::zeta(5, 2);
  EXPECT_EQ(matrix_order(diag, 10), 5);
}

TEST(PolyArith, BasicExamples) {
  const Poly x1 = Poly::variable(unit_weights(2), 0);
  const Poly x2 = Poly::variable(unit_weights(2), 1);
  EXPECT_EQ(poly_arith(x1 + x2, x1 - x2, ArithOp::Add), x1.scaled(Cyclo(2)));
  EXPECT_EQ(poly_arith(x1 + x2, x1 - x2, ArithOp::Mul), x1 * x1 - x2 * x2);
  const Poly p = x2 * x2 + x1 * x1 * x1;
  EXPECT_EQ(poly_arith(p, Poly::constant(unit_weights(2), Cyclo(1)), ArithOp::Mul), p);
  EXPECT_TRUE(poly_arith(p, p, ArithOp::Sub).is_zero());
}

TEST(PolyArith, RingAxiomsRandomized) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly a = random_poly(rng, 3, 3, 4);
    const Poly b = random_poly(rng, 3, 3, 4);
    const Poly c = random_poly(rng, 3, 3, 4);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyArith, DegreeValuationWeights) {
  const Poly p = make_poly({2, 3}, {{{3, 0}, Cyclo(-4)}, {{0, 2}, Cyclo(-27)}});
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.valuation(), 2);
  EXPECT_EQ(p.homogeneous_weight(), 6);
  EXPECT_EQ(p.degree_in(1), 2);
  const Poly q = make_poly({2, 3}, {{{1, 0}, Cyclo(1)}, {{0, 1}, Cyclo(1)}});
  EXPECT_FALSE(q.homogeneous_weight().has_value());
  EXPECT_THROW(Poly(unit_weights(2)).degree(), InvalidInput);
}

TEST(Substitute, BasicExamples) {
  const std::vector<int> w{2, 4};
  const Poly x1 = Poly::variable(w, 0);
  const Poly x2 = Poly::variable(w, 1);
  const Poly r1 = substitute(x2 * x2, 1, x2 + x1 * x1);
  EXPECT_EQ(r1, make_poly(w, {{{0, 2}, Cyclo(1)}, {{2, 1}, Cyclo(2)}, {{4, 0}, Cyclo(1)}}));
  EXPECT_EQ(r1.homogeneous_weight(), 8);
  EXPECT_EQ(substitute(x1 * x2, 0, x1), x1 * x2);
  const Poly r3 = substitute(x2 * x2 + x1 * x1 * x2, 1, x2 + x1 * x1);
  EXPECT_EQ(r3, make_poly(w, {{{0, 2}, Cyclo(1)}, {{2, 1}, Cyclo(3)}, {{4, 0}, Cyclo(2)}}));
}

TEST(Substitute, RingHomomorphismRandomized) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly a = random_poly(rng, 3, 2, 3);
    const Poly b = random_poly(rng, 3, 2, 3);
    const Poly q = random_poly(rng, 3, 2, 2);
    const int i = trial % 3;
    EXPECT_EQ(substitute(a * b, i, q), substitute(a, i, q) * substitute(b, i, q));
    EXPECT_EQ(substitute(a + b, i, q), substitute(a, i, q) + substitute(b, i, q));
  }
}

TEST(Substitute, PreservesWeightedHomogeneity) {
  const std::vector<int> w{2, 3, 6};
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    // weight-12 polynomial and a weight-6 replacement for X3
    Poly p(w);
    Poly q(w);
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 4; ++b) {
        for (int c = 0; c <= 2; ++c) {
          if (2 * a + 3 * b + 6 * c == 12) {
            p.add_term({a, b, c}, Cyclo(coeff(rng)));
          }
          if (2 * a + 3 * b + 6 * c == 6) {
            q.add_term({a, b, c}, Cyclo(coeff(rng)));
          }
        }
      }
    }
    const Poly r = substitute(p, 2, q);
    if (!r.is_zero()) {
      EXPECT_EQ(r.homogeneous_weight(), 12);
    }
  }
}

TEST(UniView, BasicExamples) {
  const Poly p = make_poly(2, {{{5, 0}, Cyclo(1)}, {{3, 1}, Cyclo(2)}, {{1, 2}, Cyclo(3)}});
  const UniView v = univariate_view(p, 1);
  ASSERT_EQ(v.degree(), 2);
  EXPECT_EQ(v.coeffs[0], make_poly(1, {{{5}, Cyclo(1)}}));
  EXPECT_EQ(v.coeffs[1], make_poly(1, {{{3}, Cyclo(2)}}));
  EXPECT_EQ(v.head(), make_poly(1, {{{1}, Cyclo(3)}}));
  EXPECT_EQ(v.reassemble(), p);

  const Poly q = make_poly({2, 3}, {{{0, 2}, Cyclo(1)}, {{3, 0}, Cyclo(1)}});
  const UniView vq = univariate_view(q, 1);
  EXPECT_TRUE(vq.coeffs[1].is_zero());
  EXPECT_TRUE(vq.head().is_constant());

  const UniView vx = univariate_view(make_poly(2, {{{1, 1}, Cyclo(1)}}), 0);
  EXPECT_TRUE(vx.coeffs[0].is_zero());
  EXPECT_EQ(vx.head(), make_poly(1, {{{1}, Cyclo(1)}}));
  EXPECT_THROW(univariate_view(Poly(unit_weights(2)), 0), InvalidInput);
}

TEST(UniView, ReassembleRandomized) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly p = random_poly(rng, 3, 4, 6);
    if (p.is_zero()) {
      continue;
    }
    EXPECT_EQ(univariate_view(p, trial % 3).reassemble(), p);
  }
}

// Oracle: Res(A, B) = lc(A)^deg B * prod_{A(a)=0} B(a) for A with known roots.
TEST(Resultant, ProductOverRootsOracle) {
  const Poly x = Poly::variable(unit_weights(1), 0);
  const Poly one = Poly::constant(unit_weights(1), Cyclo(1));
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> small(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> roots{small(rng), small(rng), small(rng)};
    Poly a = one;
    for (int root : roots) {
      a *= x - one.scaled(Cyclo(root));
    }
    Poly b = one.scaled(Cyclo(small(rng)));
    for (int k = 1; k <= 2; ++k) {
      b += x.pow(static_cast<unsigned>(k)).scaled(Cyclo(small(rng)));
    }
    if (b.is_constant()) {
      continue;
    }
    Cyclo expected(1);
    for (int root : roots) {
      const Cyclo pt[] = {Cyclo(root)};
      expected *= b.evaluate(pt);
    }
    const Poly res = resultant(univariate_view(a, 0), univariate_view(b, 0));
    ASSERT_TRUE(res.is_constant());
    const Cyclo got = res.is_zero() ? Cyclo(0) : res.terms().begin()->second;
    EXPECT_EQ(got, expected) << a.to_string() << " / " << b.to_string();
  }
}

TEST(Resultant, BasicExamples) {
  // variables: X, b, c
  const Poly a = make_poly(3, {{{1, 0, 0}, Cyclo(2)}, {{0, 1, 0}, Cyclo(1)}});
  const Poly p = make_poly(3, {{{2, 0, 0}, Cyclo(1)}, {{1, 1, 0}, Cyclo(1)}, {{0, 0, 1}, Cyclo(1)}});
  const Poly expected = make_poly(2, {{{0, 1}, Cyclo(4)}, {{2, 0}, Cyclo(-1)}});
  EXPECT_EQ(resultant(univariate_view(a, 0), univariate_view(p, 0)), expected);
  EXPECT_EQ(disc_wrt(p, 0), expected);

  const Poly x = Poly::variable(unit_weights(1), 0);
  EXPECT_TRUE(resultant(univariate_view(x, 0), univariate_view(x, 0)).is_zero());

  // X - a versus X - b in variables (X, a, b): a - b with A's row first
  const Poly xa = make_poly(3, {{{1, 0, 0}, Cyclo(1)}, {{0, 1, 0}, Cyclo(-1)}});
  const Poly xb = make_poly(3, {{{1, 0, 0}, Cyclo(1)}, {{0, 0, 1}, Cyclo(-1)}});
  EXPECT_EQ(resultant(univariate_view(xa, 0), univariate_view(xb, 0)),
            make_poly(2, {{{0, 1}, Cyclo(-1)}, {{1, 0}, Cyclo(1)}}));
}

TEST(Disc, BasicExamples) {
  const Poly cusp = make_poly(2, {{{2, 0}, Cyclo(1)}, {{0, 3}, Cyclo(-1)}});
  EXPECT_EQ(disc_wrt(cusp, 0), make_poly(1, {{{3}, Cyclo(-4)}}));
  const Poly xyxy = make_poly(2, {{{2, 1}, Cyclo(1)}, {{1, 2}, Cyclo(1)}});
  const Poly d = disc_wrt(xyxy, 0);
  ASSERT_FALSE(d.is_zero());
  EXPECT_TRUE(divide_exact(d, make_poly(1, {{{1}, Cyclo(1)}})).has_value());
  EXPECT_THROW(disc_wrt(make_poly(2, {{{0, 2}, Cyclo(1)}}), 0), InvalidInput);
}

TEST(CoeffGcd, BasicExamples) {
  const Poly y = make_poly(1, {{{1}, Cyclo(1)}});
  EXPECT_EQ(coeff_gcd(make_poly(2, {{{2, 1}, Cyclo(1)}, {{1, 2}, Cyclo(1)}}), 0), y);
  EXPECT_TRUE(coeff_gcd(make_poly(2, {{{2, 0}, Cyclo(1)}, {{0, 3}, Cyclo(-1)}}), 0).is_constant());
  const Poly g15 = make_poly(2, {{{5, 0}, Cyclo(1)}, {{3, 1}, Cyclo(2)}, {{1, 2}, Cyclo(3)}});
  EXPECT_EQ(coeff_gcd(g15, 1), y);
}

// alpha(P_X) = gcd(P_X, Disc(P_X)) with Disc viewed back in the full ring.
TEST(CoeffGcd, AlphaIdentity) {
  const std::vector<Poly> cases = {
      make_poly(2, {{{2, 1}, Cyclo(1)}, {{1, 2}, Cyclo(1)}}),
      make_poly(2, {{{5, 0}, Cyclo(1)}, {{3, 1}, Cyclo(2)}, {{1, 2}, Cyclo(3)}}),
      make_poly(2, {{{2, 0}, Cyclo(1)}, {{0, 3}, Cyclo(-1)}}),
      make_poly(3, {{{2, 1, 0}, Cyclo(1)}, {{0, 1, 2}, Cyclo(-1)}, {{1, 1, 1}, Cyclo(3)}}),
      make_poly(3, {{{1, 1, 1}, Cyclo(1)}, {{3, 0, 1}, Cyclo(1)}, {{2, 0, 2}, Cyclo(2)}}),
  };
  for (const Poly& p : cases) {
    for (int i = 0; i < p.nvars(); ++i) {
      if (p.degree_in(i) < 1) {
        continue;
      }
      const Poly alpha = coeff_gcd(p, i);
      const Poly alpha_full = insert_variable(alpha, i, p.weights()[static_cast<std::size_t>(i)]);
      const Poly disc_full =
          insert_variable(disc_wrt(p, i), i, p.weights()[static_cast<std::size_t>(i)]);
      const Poly g = disc_full.is_zero() ? make_monic(p) : gcd(p, disc_full);
      EXPECT_TRUE(proportional(alpha_full, g)) << p.to_string() << " pivot " << i;
      for (const Poly& c : univariate_view(p, i).coeffs) {
        if (!c.is_zero()) {
          EXPECT_TRUE(divide_exact(c, alpha).has_value());
        }
      }
    }
  }
}

TEST(Gcd, KnownFactors) {
  const Poly x = Poly::variable(unit_weights(2), 0);
  const Poly y = Poly::variable(unit_weights(2), 1);
  const Poly g = gcd((x + y) * (x - y), (x + y) * (x + y));
  EXPECT_EQ(g, x + y);
  std::mt19937 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    const Poly a = random_poly(rng, 2, 2, 3);
    const Poly b = random_poly(rng, 2, 2, 3);
    const Poly c = random_poly(rng, 2, 2, 3);
    if (a.is_zero() || b.is_zero() || c.is_zero()) {
      continue;
    }
    const Poly h = gcd(a * c, b * c);
    EXPECT_TRUE(divide_exact(h, make_monic(c)).has_value());
    EXPECT_TRUE(divide_exact(a * c, h).has_value());
    EXPECT_TRUE(divide_exact(b * c, h).has_value());
  }
}

TEST(Gcd, CyclotomicCoefficients) {
  const std::vector<int> w = unit_weights(2);
  const Poly x = Poly::variable(w, 0);
  const Poly y = Poly::variable(w, 1);
  const Poly l = x + y.scaled(Cyclo::zeta(3));
  const Poly g = gcd(l * (x - y), l * (x + y.scaled(Cyclo(2))));
  EXPECT_EQ(g, l);
}

TEST(Squarefree, BasicExamples) {
  EXPECT_TRUE(squarefree_check(make_poly(2, {{{2, 0}, Cyclo(1)}, {{0, 3}, Cyclo(-1)}})));
  EXPECT_FALSE(squarefree_check(make_poly(2, {{{2, 1}, Cyclo(1)}})));
  EXPECT_TRUE(squarefree_check(make_poly(2, {{{0, 0}, Cyclo(5)}})));
  const Poly x = Poly::variable(unit_weights(2), 0);
  const Poly y = Poly::variable(unit_weights(2), 1);
  EXPECT_FALSE(squarefree_check((x + y) * (x + y) * (x - y)));
  EXPECT_TRUE(squarefree_check((x + y) * (x - y) * x));
}

TEST(Disc, NonzeroForReducedRandomized) {
  std::mt19937 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 15; ++trial) {
    const Poly p = random_poly(rng, 2, 3, 4);
    if (p.is_zero() || !squarefree_check(p)) {
      continue;
    }
    for (int i = 0; i < 2; ++i) {
      if (p.degree_in(i) >= 1) {
        EXPECT_FALSE(disc_wrt(p, i).is_zero()) << p.to_string();
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 5);
}
