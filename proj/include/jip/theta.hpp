#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "jip/errors.hpp"

namespace jip {

using cplx = std::complex<double>;

// θ[a;b](z|τ) = Σ_m exp(iπ (m+a)ᵀτ(m+a) + 2πi (m+a)ᵀ(z+b)), a,b ∈ {0,½}^g.
struct Characteristic {
  Eigen::VectorXd a, b;

  static Characteristic zero(int g) { return {Eigen::VectorXd::Zero(g), Eigen::VectorXd::Zero(g)}; }
  bool is_odd() const { return static_cast<long>(std::lround(4 * a.dot(b))) % 2 != 0; }
};

// All 4^g half-integer characteristics, optionally only the odd ones.
inline std::vector<Characteristic> half_characteristics(int g, bool odd_only = false) {
  std::vector<Characteristic> out;
  for (int bits = 0; bits < (1 << (2 * g)); ++bits) {
    Characteristic c = Characteristic::zero(g);
    for (int i = 0; i < g; ++i) {
      c.a(i) = (bits >> i) & 1 ? 0.5 : 0.0;
      c.b(i) = (bits >> (g + i)) & 1 ? 0.5 : 0.0;
    }
    if (!odd_only || c.is_odd()) out.push_back(c);
  }
  return out;
}

struct ThetaContext {
  Eigen::MatrixXcd tau;
  Characteristic ch;
  int radius = 0;
  Eigen::MatrixXd im_tau_inv;

  int genus() const { return static_cast<int>(tau.rows()); }
};

inline void check_riemann_matrix(const Eigen::MatrixXcd& tau, double tol = 1e-8) {
  if (tau.rows() != tau.cols() || tau.rows() == 0) throw Error(ErrorKind::InvalidInput, "tau must be square");
  double asym = (tau - tau.transpose()).norm();
  if (asym > tol * std::max(1.0, tau.norm())) throw Error(ErrorKind::NonSymmetricTau, "tau is not symmetric: " + std::to_string(asym));
  Eigen::MatrixXd im = tau.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()));
  if (es.eigenvalues().minCoeff() <= 0) throw Error(ErrorKind::NonSymmetricTau, "Im tau is not positive definite");
}

// Box half-width so that omitted terms are below rel_tol of the largest one.
inline int theta_radius(const Eigen::MatrixXcd& tau, double rel_tol = 1e-18) {
  Eigen::MatrixXd im = tau.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (im + im.transpose()));
  double lmin = es.eigenvalues().minCoeff();
  return static_cast<int>(std::ceil(std::sqrt(-std::log(rel_tol) / (std::numbers::pi * lmin)))) + 1;
}

inline ThetaContext make_theta_context(const Eigen::MatrixXcd& tau, Characteristic ch, int extra_radius = 0) {
  check_riemann_matrix(tau);
  ThetaContext c{tau, std::move(ch), theta_radius(tau) + extra_radius, {}};
  Eigen::MatrixXd im = tau.imag();
  c.im_tau_inv = (0.5 * (im + im.transpose())).inverse();
  return c;
}

// Values are θ and its z-derivatives up to third order, all divided by exp(log_factor).
struct ThetaJet {
  cplx value;
  Eigen::VectorXcd grad;
  Eigen::MatrixXcd hess;
  std::vector<Eigen::MatrixXcd> third;  // third[a](b,c)
  cplx log_factor;
  double abs_sum = 0;  // Σ|terms|, same scaling

  cplx theta() const { return value * std::exp(log_factor); }
};

inline ThetaJet theta_jet(const ThetaContext& ctx, const Eigen::VectorXcd& z, int order = 3) {
  const int g = ctx.genus();
  const double pi = std::numbers::pi;
  const cplx I(0, 1);
  Eigen::VectorXd centre = -ctx.im_tau_inv * z.imag() - ctx.ch.a;
  Eigen::VectorXi lo(g);
  for (int i = 0; i < g; ++i) lo(i) = static_cast<int>(std::lround(centre(i))) - ctx.radius;
  int width = 2 * ctx.radius + 1;

  auto exponent = [&](const Eigen::VectorXd& n) {
    Eigen::VectorXcd nc = n.cast<cplx>();
    return I * pi * nc.dot(ctx.tau * nc) + 2.0 * pi * I * nc.dot(z + ctx.ch.b.cast<cplx>());
  };
  // dominant term sets the scale
  Eigen::VectorXd n0(g);
  for (int i = 0; i < g; ++i) n0(i) = std::lround(centre(i)) + ctx.ch.a(i);
  cplx E0 = exponent(n0);

  ThetaJet J{0.0, Eigen::VectorXcd::Zero(g), Eigen::MatrixXcd::Zero(g, g), {}, E0, 0};
  if (order >= 3) J.third.assign(static_cast<std::size_t>(g), Eigen::MatrixXcd::Zero(g, g));

  long total = 1;
  for (int i = 0; i < g; ++i) total *= width;
  Eigen::VectorXd n(g);
  Eigen::VectorXcd k(g);
  for (long idx = 0; idx < total; ++idx) {
    long r = idx;
    for (int i = 0; i < g; ++i) {
      n(i) = lo(i) + static_cast<double>(r % width) + ctx.ch.a(i);
      r /= width;
    }
    cplx term = std::exp(exponent(n) - E0);
    J.value += term;
    J.abs_sum += std::abs(term);
    if (order < 1) continue;
    k = (2.0 * pi * I) * n.cast<cplx>();
    J.grad += term * k;
    if (order < 2) continue;
    Eigen::MatrixXcd kk = k * k.transpose();
    J.hess += term * kk;
    if (order < 3) continue;
    for (int a = 0; a < g; ++a) J.third[static_cast<std::size_t>(a)] += (term * k(a)) * kk;
  }
  return J;
}

inline cplx theta(const ThetaContext& ctx, const Eigen::VectorXcd& z) { return theta_jet(ctx, z, 0).theta(); }

// Derivatives of log θ in z.
struct LogThetaDerivs {
  Eigen::VectorXcd d1;
  Eigen::MatrixXcd d2;
  std::vector<Eigen::MatrixXcd> d3;
};

inline LogThetaDerivs log_theta_derivatives(const ThetaContext& ctx, const Eigen::VectorXcd& z, double zero_tol = 1e-10) {
  auto J = theta_jet(ctx, z, 3);
  if (std::abs(J.value) < zero_tol * J.abs_sum) throw Error(ErrorKind::OnThetaDivisor, "theta vanishes at the requested point");
  const int g = ctx.genus();
  cplx T = J.value;
  Eigen::VectorXcd t1 = J.grad / T;
  Eigen::MatrixXcd t2 = J.hess / T;
  LogThetaDerivs L{t1, t2 - t1 * t1.transpose(), {}};
  for (int a = 0; a < g; ++a) {
    Eigen::MatrixXcd m = J.third[static_cast<std::size_t>(a)] / T;
    for (int b = 0; b < g; ++b)
      for (int c = 0; c < g; ++c)
        m(b, c) += -t2(a, b) * t1(c) - t2(a, c) * t1(b) - t2(b, c) * t1(a) + 2.0 * t1(a) * t1(b) * t1(c);
    L.d3.push_back(m);
  }
  return L;
}

}  // namespace jip
