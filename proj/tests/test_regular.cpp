#include "helpers.hpp"
#include "reflexion/regular.hpp"

#include <gtest/gtest.h>

using namespace reflexion;
using reflexion::testing::make_poly;

namespace {

InvariantSystem synthetic(std::vector<int> degrees, long n, long nstar, Poly delta) {
  InvariantSystem sys;
  sys.label = "synthetic";
  sys.degrees = std::move(degrees);
  sys.N = n;
  sys.Nstar = nstar;
  for (int d : sys.degrees) {
    sys.basics.push_back(make_poly(1, {{{d}, Cyclo(1)}}));
  }
  sys.discriminant = std::move(delta);
  return sys;
}

const Poly s3_delta = make_poly({2, 3}, {{{3, 0}, Cyclo(-4)}, {{0, 2}, Cyclo(-27)}});

} // namespace

TEST(RegularNumber, S3Discriminant) {
  EXPECT_TRUE(is_regular_number(s3_delta, {2, 3}, 3));
  EXPECT_TRUE(is_regular_number(s3_delta, {2, 3}, 2));
  EXPECT_FALSE(is_regular_number(s3_delta, {2, 3}, 6));
  EXPECT_TRUE(is_regular_number(s3_delta, {2, 3}, 1));
}

TEST(RegularNumber, G15Shape) {
  const Poly p = make_poly({12, 24}, {{{5, 0}, Cyclo(1)}, {{3, 1}, Cyclo(2)}, {{1, 2}, Cyclo(3)}});
  EXPECT_TRUE(is_regular_number(p, {12, 24}, 12));
  EXPECT_FALSE(is_regular_number(p, {12, 24}, 24));
  EXPECT_FALSE(regular_via_valuation(p, {12, 24}));
}

TEST(RegularViaValuation, Examples) {
  EXPECT_TRUE(regular_via_valuation(s3_delta, {2, 3}));
  EXPECT_TRUE(regular_via_valuation(make_poly(std::vector<int>{3}, {{{1}, Cyclo(1)}}), {3}));
}

TEST(Monicize, AlreadyMonic) {
  const auto sys = synthetic({2, 3}, 3, 3,
                             make_poly({2, 3}, {{{0, 2}, Cyclo(1)}, {{3, 0}, Cyclo(1)}}));
  const auto res = monicize(sys, 1);
  EXPECT_EQ(res.system.discriminant, sys.discriminant);
  EXPECT_EQ(res.coefficients, (std::vector<long>{0, 0}));
}

TEST(Monicize, SubstitutionExample) {
  const std::vector<int> w{2, 4};
  const auto sys = synthetic(w, 4, 4, make_poly(w, {{{0, 2}, Cyclo(1)}, {{2, 1}, Cyclo(1)}}));
  const auto res = monicize(sys, 0);
  EXPECT_EQ(res.coefficients, (std::vector<long>{0, 1}));
  const UniView view = univariate_view(res.system.discriminant, 0);
  EXPECT_EQ(view.degree(), 4);
  EXPECT_EQ(view.head(), Poly::constant({4}, Cyclo(2)));
  // f'_2 = f_2 - f_1^2
  EXPECT_EQ(res.system.basics[1], sys.basics[1] - sys.basics[0].pow(2));
}

TEST(Monicize, NotRegular) {
  const std::vector<int> w{2, 4};
  const auto sys = synthetic(w, 4, 4, make_poly(w, {{{2, 1}, Cyclo(1)}, {{4, 0}, Cyclo(1)}}));
  EXPECT_THROW(monicize(sys, 1), NotRegular);
}

TEST(Monicize, RealGroupsKeepComposition) {
  for (const auto& w : {build_symmetric(3), build_symmetric(4), build_imprimitive(2, 1, 2),
                        build_imprimitive(1, 4, 2), build_imprimitive(2, 1, 3)}) {
    const auto sys = discriminant(w);
    for (int i0 = 0; i0 < w.rank(); ++i0) {
      const int d = w.degrees[static_cast<std::size_t>(i0)];
      if (!is_regular_number(sys.discriminant, sys.degrees, d)) {
        EXPECT_THROW(monicize(sys, i0), NotRegular);
        continue;
      }
      const auto res = monicize(sys, i0);
      const UniView view = univariate_view(res.system.discriminant, i0);
      EXPECT_TRUE(view.head().is_constant());
      EXPECT_EQ(view.degree(), sys.weight() / d);
      EXPECT_EQ(compose(res.system.discriminant, res.system.basics), hyperplane_product(w));
      for (int dd : candidate_numbers(sys.degrees, nullptr)) {
        EXPECT_EQ(is_regular_number(res.system.discriminant, sys.degrees, dd),
                  is_regular_number(sys.discriminant, sys.degrees, dd));
      }
    }
  }
}

TEST(BruteForce, S3) {
  const auto w = build_symmetric(3);
  const auto three = regular_elements_bruteforce(w, 3);
  ASSERT_EQ(three.size(), 2u);
  for (std::size_t c : three) {
    EXPECT_EQ(matrix_order(w.group.element(c), 10), 3);
  }
  EXPECT_TRUE(regular_elements_bruteforce(w, 6).empty());
  const auto two = regular_elements_bruteforce(w, 2);
  ASSERT_EQ(two.size(), 3u);
  for (std::size_t c : two) {
    EXPECT_EQ(exact_rank(Mat(w.group.element(c) - Mat::Identity(2, 2))), 1);
  }
}

TEST(Springer, Mu3ShowsTheInverseConvention) {
  const auto w = build_imprimitive(3, 1, 1);
  const auto reg = regular_elements_bruteforce(w, 3);
  ASSERT_EQ(reg.size(), 1u);
  const Mat& c = w.group.element(reg[0]);
  EXPECT_EQ(c(0, 0), Cyclo::zeta(3, 1));
  EXPECT_FALSE(eigenvalues_are_powers(c, 3, {3 - 1}));
  EXPECT_TRUE(eigenvalues_are_powers(c, 3, {-(3 - 1)}));
  EXPECT_TRUE(springer_eigenvalue_check(w, reg[0], 3));
}

TEST(Springer, WitnessesOfSuiteGroups) {
  for (const auto& w : {build_symmetric(3), build_symmetric(4), build_imprimitive(3, 1, 2),
                        build_imprimitive(1, 4, 2)}) {
    for (int d : candidate_numbers(w.degrees, &w)) {
      for (std::size_t c : regular_elements_bruteforce(w, d)) {
        EXPECT_TRUE(springer_eigenvalue_check(w, c, d)) << w.label << " d=" << d;
      }
    }
  }
  const auto s3 = build_symmetric(3);
  EXPECT_TRUE(springer_eigenvalue_check(s3, s3.group.identity_index(), 1));
}

TEST(LehrerSpringer, Examples) {
  EXPECT_TRUE(lehrer_springer_check(4, {2, 3, 4}, {2, 1, 0}));
  EXPECT_FALSE(lehrer_springer_check(6, {2, 3, 4}, {2, 1, 0}));
  EXPECT_TRUE(lehrer_springer_check(1, {4, 6, 14}, {10, 8, 0}));
}

TEST(OracleTriangle, SuiteGroups) {
  for (const auto& w : {build_symmetric(3), build_symmetric(4), build_imprimitive(2, 1, 2),
                        build_imprimitive(3, 1, 2), build_imprimitive(1, 3, 3),
                        build_imprimitive(1, 5, 2)}) {
    const auto sys = discriminant(w);
    const auto rows = regular_report(w, sys);
    for (const auto& row : rows) {
      EXPECT_EQ(*row.symbolic, *row.brute_force);
      EXPECT_EQ(*row.symbolic, row.lehrer_springer);
    }
    EXPECT_EQ(regular_via_valuation(sys.discriminant, sys.degrees),
              is_regular_number(sys.discriminant, sys.degrees, sys.degrees.back()));
  }
}

TEST(MinGenerators, IndependentMinimality) {
  for (const auto& w : {build_symmetric(3), build_symmetric(4), build_imprimitive(2, 1, 2),
                        build_imprimitive(1, 4, 2), build_imprimitive(1, 5, 2)}) {
    const long from_one = min_reflection_generators(w, {}, 1);
    EXPECT_EQ(from_one, min_reflection_generators(w));
    EXPECT_EQ(from_one, generator_lower_bound(w.degrees, w.codegrees));
    EXPECT_EQ(from_one, discriminant(w).discriminant.valuation());
  }
  EXPECT_EQ(min_reflection_generators(build_symmetric(4)), 3);
  EXPECT_EQ(min_reflection_generators(build_symmetric(3)), 2);
  EXPECT_EQ(min_reflection_generators(build_imprimitive(1, 4, 2)), 2);
}

TEST(MinGenerators, ConjugacyPruningAgrees) {
  Limits tight;
  tight.subset_budget = 1;
  for (const auto& w : {build_symmetric(4), build_imprimitive(2, 1, 3), build_imprimitive(1, 3, 3)}) {
    EXPECT_EQ(min_reflection_generators(w, tight, 1), min_reflection_generators(w, {}, 1)) << w.label;
  }
}

TEST(OrlikSolomon, Reports) {
  const auto s3 = orlik_solomon_report(build_symmetric(3));
  EXPECT_TRUE(s3.cond_i && s3.cond_ii && s3.cond_iii && s3.cond_iv);
  EXPECT_TRUE(s3.consistent);
  EXPECT_EQ(s3.cond_v, Witness::Witnessed);
  const auto b2 = orlik_solomon_report(build_imprimitive(2, 1, 2));
  EXPECT_TRUE(b2.cond_i && b2.cond_ii && b2.cond_iii && b2.cond_iv);
  EXPECT_EQ(b2.cond_v, Witness::Witnessed);
  const auto g15 = orlik_solomon_report(exceptional_table("G15"));
  EXPECT_FALSE(g15.cond_iii);
  EXPECT_TRUE(g15.consistent);
  const auto g333 = orlik_solomon_report(build_imprimitive(1, 3, 3));
  EXPECT_TRUE(g333.consistent);
  for (const auto& row : exceptional_groups()) {
    EXPECT_TRUE(orlik_solomon_report(row).consistent) << row.name;
  }
}

TEST(TheoremN, Examples) {
  EXPECT_EQ(theorem_n(std::vector<int>{2, 3}, std::vector<int>{1, 0}, 3), 2);
  const auto& g15 = exceptional_table("G15");
  EXPECT_EQ(theorem_n(g15.degrees, g15.codegrees, 12), 5);
  EXPECT_THROW(theorem_n(g15.degrees, g15.codegrees, 24), NotRegular);
  const auto& g31 = exceptional_table("G31");
  EXPECT_EQ(theorem_n(g31.degrees, g31.codegrees, 24), 5);
  const auto sys = discriminant(build_symmetric(3));
  EXPECT_EQ(theorem_n(sys, 3), 2);
  EXPECT_EQ(theorem_n(sys, 2), 3);
}
