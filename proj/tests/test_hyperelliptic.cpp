#include <gtest/gtest.h>

#include <random>

#include "jip/hyperelliptic.hpp"

using namespace jip;

namespace {

Eigen::VectorXcd random_u(const Jacobian& J, std::mt19937_64& rng) {
  // interior of the period parallelogram, away from the lattice
  std::uniform_real_distribution<double> U(0.15, 0.85);
  int g = J.fam.genus();
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(g);
  for (int i = 0; i < g; ++i) u += U(rng) * J.pd.omega.col(i) + U(rng) * J.pd.omega_prime.col(i);
  return u;
}

}  // namespace

TEST(Periods, SymmetricBranchPointsGiveImaginaryTau) {
  auto fam = family_from_branch_points({-1.0, 0.0, 1.0});
  auto pd = compute_periods(fam);
  EXPECT_NEAR(pd.tau(0, 0).real(), 0.0, 1e-12);
  EXPECT_NEAR(pd.tau(0, 0).imag(), 1.0, 1e-12);  // y² = x³ − x is the square lattice
  EXPECT_GT(pd.tau(0, 0).imag(), 0.0);
}

TEST(Periods, RandomGenusTwoRiemannMatrices) {
  std::mt19937_64 rng(252);
  for (int k = 0; k < 20; ++k) {
    auto fam = random_real_branch_family(2, rng);
    auto pd = compute_periods(fam);
    EXPECT_LT((pd.tau - pd.tau.transpose()).norm(), 1e-8);
    Eigen::MatrixXd im = pd.tau.imag();
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(im).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Periods, LegendreRelation) {
  std::mt19937_64 rng(9);
  for (int g : {1, 2}) {
    auto pd = compute_periods(random_real_branch_family(g, rng));
    Eigen::MatrixXcd want = cplx(0, 2 * std::numbers::pi) * Eigen::MatrixXcd::Identity(g, g);
    EXPECT_LT((pd.legendre - want).norm(), 1e-9);
  }
}

TEST(Periods, QuadratureDoubling) {
  std::mt19937_64 rng(10);
  for (int g : {1, 2}) {
    auto fam = random_real_branch_family(g, rng);
    auto a = compute_periods(fam, 128), b = compute_periods(fam, 256);
    for (auto [x, y] : {std::pair{&a.omega, &b.omega}, {&a.omega_prime, &b.omega_prime}, {&a.eta, &b.eta}, {&a.eta_prime, &b.eta_prime}})
      EXPECT_LT((*x - *y).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Periods, Errors) {
  auto complex_roots = make_numeric_family(2, 3, {{4, 1.0}});  // x³ + x
  try {
    compute_periods(complex_roots);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedBranchPoints);
  }
  auto collide = make_numeric_family(2, 3, {{4, -3.0}, {6, 2.0}});
  EXPECT_THROW(compute_periods(collide), Error);
  EXPECT_THROW(compute_periods(make_numeric_family(3, 4, {})), Error);
}

TEST(Jacobian, KappaSymmetric) {
  std::mt19937_64 rng(12);
  auto J = make_jacobian(random_real_branch_family(2, rng));
  EXPECT_LT((J.kappa - J.kappa.transpose()).norm(), 1e-10);
  EXPECT_TRUE(J.theta.ch.is_odd());
}

TEST(Wp, EllipticUniformization) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    auto fam = random_real_branch_family(1, rng);
    auto J = make_jacobian(fam);
    for (int k = 0; k < 10; ++k) {
      auto W = wp_from_theta(J, random_u(J, rng));
      cplx x = W.wp(1, 1), y = -0.5 * W.wp(1, 1, 1);
      EXPECT_LT(std::abs(eval_f(fam, x, y)), 1e-8);
    }
  }
}

TEST(Wp, EvenAndPeriodic) {
  std::mt19937_64 rng(31);
  auto J = make_jacobian(random_real_branch_family(2, rng));
  auto u = random_u(J, rng);
  auto W = wp_from_theta(J, u);
  auto Wm = wp_from_theta(J, -u);
  EXPECT_LT((W.wp2 - Wm.wp2).norm(), 1e-8);
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT((wp_from_theta(J, u + J.pd.omega.col(i)).wp2 - W.wp2).norm(), 1e-8);
    EXPECT_LT((wp_from_theta(J, u + J.pd.omega_prime.col(i)).wp2 - W.wp2).norm(), 1e-8);
  }
  EXPECT_LT((W.wp2 - W.wp2.transpose()).norm(), 1e-12);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        EXPECT_LT(std::abs(W.wp3[a](b, c) - W.wp3[b](a, c)), 1e-9);
        EXPECT_LT(std::abs(W.wp3[a](b, c) - W.wp3[c](b, a)), 1e-9);
      }
}

TEST(Wp, ThirdDerivativeMatchesDifferences) {
  std::mt19937_64 rng(37);
  auto J = make_jacobian(random_real_branch_family(2, rng));
  auto u = random_u(J, rng);
  auto W = wp_from_theta(J, u);
  double h = 1e-5;
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXcd up = u, um = u;
    up(k) += h;
    um(k) -= h;
    Eigen::MatrixXcd fd = (wp_from_theta(J, up).wp2 - wp_from_theta(J, um).wp2) / (2 * h);
    EXPECT_LT((fd - W.wp3[k]).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(Wp, OnThetaDivisor) {
  std::mt19937_64 rng(41);
  auto J = make_jacobian(random_real_branch_family(2, rng));
  try {
    wp_from_theta(J, Eigen::VectorXcd::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OnThetaDivisor);
  }
}

TEST(Abel, InfinityAndConjugate) {
  std::mt19937_64 rng(43);
  auto fam = random_real_branch_family(2, rng);
  auto pts = lift_x_to_points(fam, cplx(0.4, 0.3));
  auto u0 = abel_map(fam, pts[0]), u1 = abel_map(fam, pts[1]);
  EXPECT_LT((u0 + u1).norm(), 1e-12);
  EXPECT_EQ(abel_integrate_path(fam, {0.0}).u.norm(), 0.0);
}

TEST(Abel, PathIndependenceModuloLattice) {
  std::mt19937_64 rng(47);
  auto fam = random_real_branch_family(2, rng);
  auto pd = compute_periods(fam);
  Eigen::MatrixXcd Lat(2, 4);
  Lat << pd.omega, pd.omega_prime;
  auto P = lift_x_to_points(fam, cplx(0.35, 0.2))[0];
  auto direct = abel_map(fam, P);
  cplx tP = 1.0 / std::sqrt(P.x);
  int checked = 0;
  for (cplx via : {tP * cplx(0.5, 2.0), tP * cplx(1.5, -1.5), tP * cplx(-1.0, 0.7), cplx(0.4, 2.7)}) {
    AbelOptions opt;
    opt.via = {via};
    Eigen::VectorXcd diff = abel_map(fam, P, opt) - direct;
    // diff = ω m + ω′ n with integer m, n
    Eigen::Matrix4d A;
    Eigen::Vector4d b;
    A << Lat.real(), Lat.imag();
    b << diff.real(), diff.imag();
    Eigen::Vector4d mn = A.fullPivLu().solve(b);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(mn(i), std::round(mn(i)), 1e-7);
    ++checked;
  }
  EXPECT_EQ(checked, 4);
}

TEST(Abel, EllipticRoundTrip) {
  std::mt19937_64 rng(53);
  auto fam = random_real_branch_family(1, rng);
  auto J = make_jacobian(fam);
  for (cplx x : {cplx(0.3, 0.4), cplx(-0.7, 0.1), cplx(1.9, -0.6), cplx(0.05, -0.9)}) {
    for (const auto& P : lift_x_to_points(fam, x)) {
      auto W = wp_from_theta(J, abel_map(fam, P));
      EXPECT_LT(std::abs(W.wp(1, 1) - P.x), 1e-7);
      EXPECT_LT(std::abs(-0.5 * W.wp(1, 1, 1) - P.y), 1e-7);
    }
  }
}

TEST(Inversion, Genus2Identities) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 4; ++trial) {
    auto fam = random_real_branch_family(2, rng);
    auto J = make_jacobian(fam);
    for (int k = 0; k < 5; ++k) {
      auto D = random_divisor(fam, rng);
      auto report = verify_inversion(J, D);
      EXPECT_EQ(report.size(), 8u);
      for (const auto& c : report) EXPECT_LT(c.abs_err, 1e-6) << c.identity;
    }
  }
}

TEST(Inversion, ReportJson) {
  std::mt19937_64 rng(26);
  auto fam = random_real_branch_family(1, rng);
  auto J = make_jacobian(fam);
  auto D = random_divisor(fam, rng);
  auto report = verify_inversion(J, D);
  ASSERT_EQ(report.size(), 2u);
  auto j = to_json(report[0]);
  EXPECT_TRUE(j.contains("identity"));
  EXPECT_EQ(j["lhs"].size(), 2u);
  EXPECT_LT(j["abs_err"].get<double>(), 1e-7);
}

TEST(Inversion, ConjugatePairRefused) {
  std::mt19937_64 rng(27);
  auto fam = random_real_branch_family(2, rng);
  auto J = make_jacobian(fam);
  auto pts = lift_x_to_points(fam, cplx(0.2, -0.5));
  auto D = make_divisor(fam, pts);
  EXPECT_FALSE(D.non_special);
  try {
    verify_inversion(J, D);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SpecialDivisor);
  }
}
