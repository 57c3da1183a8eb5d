#include <gtest/gtest.h>

#include <random>

#include "jip/divisor_solver.hpp"

using namespace jip;

namespace {

Divisor fibre_divisor_34(const CurveFamily& fam, cplx x) {
  return make_divisor(fam, lift_x_to_points(fam, x));
}

}  // namespace

TEST(Divisor, GenusOneLinearFunction) {
  auto fam = make_numeric_family(2, 3, {{4, -1.0}, {6, 0.5}});
  auto P = lift_x_to_points(fam, cplx(0.3, 0.2))[0];
  auto D = make_divisor(fam, {P});
  std::mt19937_64 rng(1);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  ASSERT_EQ(sys.rho[0][0].size(), 2u);
  EXPECT_NEAR(std::abs(sys.rho[0][0][1] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(sys.rho[0][0][0] + P.x), 0.0, 1e-12);
  auto chi = chi_polynomial(sys);
  ASSERT_EQ(chi.size(), 2u);
  auto back = solve_divisor(sys);
  EXPECT_LT(divisor_distance(D, back), 1e-10);
}

TEST(Divisor, Curve34VanishesOnD) {
  std::mt19937_64 rng(34);
  auto fam = random_numeric_family(3, 4, rng);
  auto D = random_divisor(fam, rng);
  EXPECT_TRUE(D.non_special);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  EXPECT_TRUE(respects_degree_bounds(sys));
  for (std::size_t l = 0; l < 2; ++l)
    for (const auto& p : D.points) EXPECT_LT(std::abs(sys.eval(l, p.x, p.y)), 1e-8 * sys.scale(l, p.x, p.y));
}

TEST(Divisor, FullFibreIsSpecial) {
  std::mt19937_64 rng(5);
  auto fam = random_numeric_family(3, 4, rng);
  auto D = fibre_divisor_34(fam, cplx(0.4, -0.1));
  EXPECT_FALSE(D.non_special);
}

TEST(Divisor, RejectsOffCurvePoint) {
  auto fam = make_numeric_family(2, 3, {});
  try {
    make_divisor(fam, {{1.0, 2.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Divisor, RepeatedPointIsDegenerate) {
  std::mt19937_64 rng(9);
  auto fam = random_numeric_family(2, 5, rng);
  auto P = random_curve_point(fam, rng);
  Divisor D{{P, P}, true};
  try {
    rfunctions_from_divisor(fam, D, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateDeterminant);
  }
}

TEST(Chi, HyperellipticIsRho0) {
  std::mt19937_64 rng(25);
  auto fam = random_numeric_family(2, 5, rng);
  auto D = random_divisor(fam, rng);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  auto chi = chi_polynomial(sys);
  ASSERT_EQ(chi.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(chi[k], sys.rho[0][0][k]);
  // x1 + x2 = −(coefficient of x) for the monic quadratic
  EXPECT_NEAR(std::abs(-chi[1] - (D.points[0].x + D.points[1].x)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(chi[0] - D.points[0].x * D.points[1].x), 0.0, 1e-10);
}

TEST(Chi, RootsAreDivisorAbscissae) {
  std::mt19937_64 rng(43);
  auto fam = random_numeric_family(3, 4, rng);
  auto D = random_divisor(fam, rng);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  auto chi = chi_polynomial(sys);
  EXPECT_EQ(effective_degree(chi, 1e-10), 3);
  for (auto r : poly_roots(chi, 3)) {
    double best = 1e9;
    for (const auto& p : D.points) best = std::min(best, std::abs(p.x - r));
    EXPECT_LT(best, 1e-7);
  }
}

TEST(Chi, DegreeCollapseDetected) {
  std::mt19937_64 rng(3);
  auto fam = random_numeric_family(3, 4, rng);
  auto D = random_divisor(fam, rng);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  // kill the top of R_6 and R_7 so that det loses its x^3 term
  sys.rho[0][0][2] = 0.0;
  sys.rho[1][1][1] = 0.0;
  try {
    chi_polynomial(sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeCollapse);
  }
}

TEST(Solve, RoundTripFamilies) {
  std::mt19937_64 rng(2024);
  for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 5}, {3, 4}, {3, 5}, {4, 5}}) {
    auto fam = random_numeric_family(n, s, rng);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      auto D = random_divisor(fam, rng);
      auto r = round_trip(fam, D, rng);
      EXPECT_EQ(r.chi_degree, fam.genus()) << fam.name();
      worst = std::max(worst, r.max_error);
    }
    EXPECT_LT(worst, 1e-6) << fam.name();
  }
}

TEST(Solve, RowScalingInvariance) {
  std::mt19937_64 rng(77);
  auto fam = random_numeric_family(4, 5, rng);
  auto D = random_divisor(fam, rng);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  auto base = solve_divisor(sys);
  for (std::size_t l = 0; l < sys.rho.size(); ++l) {
    auto scaled = sys;
    for (auto& p : scaled.rho[l])
      for (auto& c : p) c *= cplx(-2.5, 1.25);
    EXPECT_LT(divisor_distance(base, solve_divisor(scaled)), 1e-9);
  }
}

TEST(Solve, RepeatedAbscissaTwoSheets) {
  std::mt19937_64 rng(11);
  auto fam = random_numeric_family(4, 5, rng);
  auto fibre = lift_x_to_points(fam, cplx(0.2, 0.3));
  std::vector<CurvePoint> pts{fibre[0], fibre[1]};
  for (int k = 0; k < 4; ++k) pts.push_back(random_curve_point(fam, rng));
  auto D = make_divisor(fam, pts);
  EXPECT_TRUE(D.non_special);
  auto back = solve_divisor(rfunctions_from_divisor(fam, D, rng));
  EXPECT_LT(divisor_distance(D, back), 1e-6);
}

TEST(Solve, TrigonalRepeatedAbscissaIsAmbiguous) {
  // two of three sheets over one x: R6 and R7 vanish on the whole fibre
  std::mt19937_64 rng(11);
  auto fam = random_numeric_family(3, 4, rng);
  auto fibre = lift_x_to_points(fam, cplx(0.2, 0.3));
  auto D = make_divisor(fam, {fibre[0], fibre[1], random_curve_point(fam, rng)});
  EXPECT_TRUE(D.non_special);
  auto sys = rfunctions_from_divisor(fam, D, rng);
  for (const auto& p : fibre) EXPECT_LT(std::abs(sys.eval(1, p.x, p.y)), 1e-8 * sys.scale(1, p.x, p.y));
  try {
    solve_divisor(sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NullSpaceDimensionError);
  }
}
