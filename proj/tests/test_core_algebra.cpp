#include <gtest/gtest.h>

#include <random>

#include "jip/laurent_series.hpp"

using namespace jip;

namespace {

WeightedPoly L(int k) { return WeightedPoly::lambda(k); }
WeightedPoly Q(long a, long b = 1) { return WeightedPoly(Rational(a, b)); }

LaurentSeries S(int low, std::vector<WeightedPoly> c, int trunc) {
  return LaurentSeries::from_coefficients(low, std::move(c), trunc);
}

WeightedPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 4), idx(1, 5), ex(0, 2), num(-9, 9), den(1, 5);
  WeightedPoly p;
  int t = nterms(rng);
  for (int a = 0; a < t; ++a) {
    LambdaMonomial m = LambdaMonomial::var(idx(rng), ex(rng)) * LambdaMonomial::var(idx(rng), ex(rng));
    p.add_term(m, Rational(num(rng), den(rng)));
  }
  return p;
}

// Unit series 1 + Σ c_k ξ^k with small random polynomial coefficients.
LaurentSeries random_unit(std::mt19937_64& rng, int prec) {
  std::vector<WeightedPoly> c{Q(1)};
  for (int k = 1; k < prec; ++k) c.push_back(random_poly(rng));
  return S(0, c, prec);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.numerator(), "-3");
  EXPECT_EQ(r.denominator(), "2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_THROW(Rational::parse("abc"), Error);
}

TEST(WeightedPoly, Examples) {
  WeightedPoly sq = poly_arith(L(2), L(2), PolyOp::mul);
  EXPECT_EQ(sq, WeightedPoly::term(LambdaMonomial::var(2, 2), 1));
  EXPECT_EQ(sq.weight(), 4);
  EXPECT_EQ(poly_arith(L(4) + L(6), L(6), PolyOp::sub), L(4));
  WeightedPoly prod = poly_arith(L(2).scaled(Rational(1, 4)), L(3).scaled(Rational(1, 5)), PolyOp::mul);
  EXPECT_EQ(prod, WeightedPoly::term(LambdaMonomial::var(2) * LambdaMonomial::var(3), Rational(1, 20)));
  EXPECT_EQ(prod.weight(), 5);
  EXPECT_FALSE((L(4) + L(6)).weight().has_value());
}

TEST(WeightedPoly, NoZeroCoefficientsStored) {
  WeightedPoly p = L(3) - L(3);
  EXPECT_TRUE(p.is_zero());
  EXPECT_TRUE(p.terms().empty());
}

TEST(WeightedPoly, RingAxioms) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, WeightedPoly{});
  }
}

TEST(WeightedPoly, WeightAdditivity) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto a = random_poly(rng), b = random_poly(rng);
    if (a.weight() && b.weight() && !(a * b).is_zero()) {
      EXPECT_EQ((a * b).weight(), *a.weight() + *b.weight());
    }
  }
}

TEST(LaurentSeries, ArithExamples) {
  auto a = S(-1, {Q(1), Q(1)}, 5);
  auto b = S(1, {Q(1)}, 6);
  auto p = series_arith(a, b, SeriesOp::mul);
  EXPECT_EQ(p, S(0, {Q(1), Q(1)}, 5));

  auto u = S(0, {Q(1), Q(0), L(2).scaled(Rational(1, 3))}, 6);
  auto v = S(0, {Q(1), Q(0), L(2).scaled(Rational(-1, 3))}, 6);
  auto uv = u * v;
  EXPECT_EQ(uv.coefficient(0), Q(1));
  EXPECT_EQ(uv.coefficient(2), WeightedPoly{});
  EXPECT_EQ(uv.coefficient(4), (L(2) * L(2)).scaled(Rational(-1, 9)));
  EXPECT_EQ(uv.truncation_order(), 6);

  auto x = LaurentSeries::monomial(1, -3, 4);
  auto xi3 = LaurentSeries::monomial(1, 3, 10);
  EXPECT_EQ((x * xi3), LaurentSeries::monomial(1, 0, 7));
}

TEST(LaurentSeries, AddKeepsTighterTruncation) {
  auto a = S(0, {Q(1), Q(2)}, 3);
  auto b = S(-2, {Q(1)}, 10);
  auto c = a + b;
  EXPECT_EQ(c.truncation_order(), 3);
  EXPECT_EQ(c.lowest_exponent(), -2);
  EXPECT_EQ(c.coefficient(1), Q(2));
}

TEST(LaurentSeries, InvertExamples) {
  auto a = S(-2, {Q(1), Q(0), L(2)}, 6);
  auto inv = series_invert(a);
  EXPECT_EQ(inv.lowest_exponent(), 2);
  EXPECT_EQ(inv.coefficient(2), Q(1));
  EXPECT_EQ(inv.coefficient(4), -L(2));
  EXPECT_EQ(inv.coefficient(6), L(2) * L(2));
  EXPECT_EQ(inv.coefficient(8), -(L(2) * L(2) * L(2)));
  EXPECT_EQ(series_invert(LaurentSeries::monomial(1, 0, 5)), LaurentSeries::monomial(1, 0, 5));
  auto c = series_invert(LaurentSeries::monomial(-3, -2, 4));
  EXPECT_EQ(c, LaurentSeries::monomial(Q(-1, 3), 2, 8));
  EXPECT_THROW(series_invert(S(0, {L(1)}, 3)), Error);
}

TEST(LaurentSeries, InvertRoundTripRandom) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto a = random_unit(rng, 6);
    auto prod = a * series_invert(a);
    EXPECT_EQ(prod, LaurentSeries::monomial(1, 0, 6));
  }
}

TEST(LaurentSeries, NthRootExamples) {
  EXPECT_EQ(series_nth_root(LaurentSeries::monomial(1, -3, 5), 3), LaurentSeries::monomial(1, -1, 7));
  EXPECT_EQ(series_nth_root(LaurentSeries::monomial(1, -5, 5), 5), LaurentSeries::monomial(1, -1, 9));
  // binomial-series oracle for (1 + a ξ^4 + b ξ^6)^{1/2}
  auto a = S(-6, {Q(1), 0, 0, 0, L(4), 0, L(6)}, 4);
  auto r = series_nth_root(a, 2);
  EXPECT_EQ(r.lowest_exponent(), -3);
  EXPECT_EQ(r.coefficient(-3), Q(1));
  EXPECT_EQ(r.coefficient(1), L(4).scaled(Rational(1, 2)));
  EXPECT_EQ(r.coefficient(3), L(6).scaled(Rational(1, 2)));
  EXPECT_EQ(r.coefficient(5), (L(4) * L(4)).scaled(Rational(-1, 8)));
  EXPECT_THROW(series_nth_root(LaurentSeries::monomial(1, -4, 3), 3), Error);
}

TEST(LaurentSeries, NthRootPowerIdentity) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 10; ++t) {
      auto a = random_unit(rng, 5).shifted(-n * 2);
      auto r = series_nth_root(a, n);
      LaurentSeries p = r;
      for (int k = 1; k < n; ++k) p = p * r;
      EXPECT_EQ(p, a);
    }
}

TEST(LaurentSeries, IntegrateExamples) {
  EXPECT_EQ(series_integrate(LaurentSeries::monomial(1, 0, 3)), LaurentSeries::monomial(1, 1, 4));
  auto r1 = series_integrate(S(-2, {Q(1), Q(0)}, 0));
  EXPECT_EQ(r1, S(-1, {Q(-1), Q(0)}, 1));
  auto d = S(3, {Q(1), L(1).scaled(Rational(-1, 3))}, 5);
  auto i = series_integrate(d);
  EXPECT_EQ(i.coefficient(4), Q(1, 4));
  EXPECT_EQ(i.coefficient(5), L(1).scaled(Rational(-1, 15)));
  EXPECT_THROW(series_integrate(S(-1, {Q(1)}, 2)), Error);
}

TEST(LaurentSeries, IntegrateThenDifferentiate) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    std::vector<WeightedPoly> c;
    for (int k = 0; k < 7; ++k) c.push_back(k == 2 ? WeightedPoly{} : random_poly(rng));
    auto a = S(-3, c, 4);
    EXPECT_EQ(series_integrate(a).derivative(), a);
  }
}

TEST(LaurentSeries, ResidueExamples) {
  EXPECT_EQ(series_residue(LaurentSeries::monomial(1, -1, 3)), Q(1));
  EXPECT_EQ(series_residue(S(-2, {Q(1), 0, 3}, 3)), WeightedPoly{});
  EXPECT_EQ(series_residue(S(-1, {L(2).scaled(Rational(1, 3)), 0, Q(1)}, 3)), L(2).scaled(Rational(1, 3)));
  EXPECT_THROW(series_residue(LaurentSeries::monomial(1, -4, -2)), Error);
}

TEST(LaurentSeries, WeightGradingPreserved) {
  // coefficient of ξ^k has weight k in a "homogeneous" series
  auto a = S(0, {Q(1), L(1), L(2) + L(1) * L(1), L(3)}, 4);
  auto b = S(0, {Q(1), L(1).scaled(Rational(2)), L(2)}, 4);
  for (const auto& s : {a * b, series_invert(a), series_nth_root(a, 3), a + b})
    for (int k = s.lowest_exponent(); k < s.truncation_order(); ++k) EXPECT_TRUE(s.coefficient(k).is_homogeneous_of(k));
}
