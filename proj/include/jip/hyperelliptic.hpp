#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "jip/divisor_solver.hpp"
#include "jip/theta.hpp"

namespace jip {

// y² = P(x), P monic of degree 2g+1 with no x^{2g} term; returns ascending coefficients of P.
inline std::vector<double> hyperelliptic_poly(const CurveFamily& fam) {
  if (!fam.is_hyperelliptic()) throw Error(ErrorKind::InvalidInput, "curve is not hyperelliptic");
  const auto& c0 = fam.numeric_table()[0];
  return {c0.begin(), c0.end()};
}

inline CurveFamily family_from_branch_points(const std::vector<double>& e) {
  int s = static_cast<int>(e.size());
  if (s % 2 == 0 || s < 3) throw Error(ErrorKind::InvalidInput, "need an odd number of branch points");
  std::vector<double> c{1.0};
  for (double r : e) {
    std::vector<double> nc(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= r * c[i];
    }
    c = nc;
  }
  if (std::abs(c[static_cast<std::size_t>(s - 1)]) > 1e-12) throw Error(ErrorKind::InvalidInput, "branch points must sum to zero");
  std::map<int, double> v;
  for (int i = 0; i <= s - 2; ++i) v[2 * s - 2 * i] = c[static_cast<std::size_t>(i)];
  return make_numeric_family(2, s, v);
}

// 2g+1 real branch points summing to zero, pairwise at least min_gap apart.
inline CurveFamily random_real_branch_family(int g, std::mt19937_64& rng, double min_gap = 0.25) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> e(static_cast<std::size_t>(2 * g + 1));
    for (auto& r : e) r = U(rng);
    double mean = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
    for (auto& r : e) r -= mean;
    std::sort(e.begin(), e.end());
    bool ok = true;
    for (std::size_t i = 1; i < e.size(); ++i) ok &= e[i] - e[i - 1] >= min_gap;
    if (ok) return family_from_branch_points(e);
  }
  throw Error(ErrorKind::BranchCollision, "could not draw separated branch points");
}

inline std::vector<double> real_branch_points(const CurveFamily& fam, double tol = 1e-6) {
  auto c = hyperelliptic_poly(fam);
  CPoly p(c.begin(), c.end());
  auto roots = poly_roots(p, static_cast<int>(c.size()) - 1);
  std::vector<double> e;
  for (auto r : roots) {
    if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r)))
      throw Error(ErrorKind::UnsupportedBranchPoints, "periods are computed for real branch points only");
    e.push_back(r.real());
  }
  std::sort(e.begin(), e.end());
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] - e[i - 1] < tol) throw Error(ErrorKind::BranchCollision, "branch points collide");
  return e;
}

// du_w = x^{g−k} dx/(−2y), w = 2k−1; numerators ascending in x.
inline std::vector<CPoly> first_kind_numerators(int g) {
  std::vector<CPoly> out;
  for (int k = 1; k <= g; ++k) {
    CPoly p(static_cast<std::size_t>(g - k + 1), 0.0);
    p.back() = 1.0;
    out.push_back(p);
  }
  return out;
}

// dr_ℓ = Σ_{k=j}^{2g−j} (k+1−j) μ_{k+1+j} x^k dx/(−2y), j = g − (ℓ−1)/2, μ the coefficients of P.
inline std::vector<CPoly> second_kind_numerators(const CurveFamily& fam) {
  int g = fam.genus();
  auto mu = hyperelliptic_poly(fam);
  mu.resize(static_cast<std::size_t>(2 * g + 3), 0.0);
  std::vector<CPoly> out;
  for (int l = 1; l <= 2 * g - 1; l += 2) {
    int j = g - (l - 1) / 2;
    CPoly p(static_cast<std::size_t>(2 * g - j + 1), 0.0);
    for (int k = j; k <= 2 * g - j; ++k) p[static_cast<std::size_t>(k)] = static_cast<double>(k + 1 - j) * mu[static_cast<std::size_t>(k + 1 + j)];
    out.push_back(p);
  }
  return out;
}

struct PeriodData {
  std::vector<double> branch_points;
  Eigen::MatrixXcd omega, omega_prime, eta, eta_prime, tau;
  Eigen::MatrixXcd legendre;  // ω η′ᵀ − ω′ ηᵀ
  int nodes = 0;
};

// ∫ F(x) dx/(−2y) along the upper edge of [e_j, e_{j+1}], y = Π sqrt(x − e_k + i0); Gauss–Chebyshev in x = mid + half·cos θ.
inline cplx segment_integral(const std::vector<double>& e, std::size_t j, const CPoly& F, int N) {
  double a = e[j], b = e[j + 1];
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::size_t above = e.size() - (j + 1);
  cplx phase = std::pow(cplx(0, 1), static_cast<int>(above % 4));
  cplx sum = 0.0;
  for (int q = 1; q <= N; ++q) {
    double x = mid + half * std::cos((2.0 * q - 1.0) * std::numbers::pi / (2.0 * N));
    double rest = 1.0;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (k != j && k != j + 1) rest *= std::abs(x - e[k]);
    sum += poly_eval(F, x) / (-2.0 * phase * std::sqrt(rest));
  }
  return sum * (std::numbers::pi / N);
}

// a_i around [e_{2i−1}, e_{2i}], b_i = Σ_{k≥i} (cycle around [e_{2k}, e_{2k+1}]).
inline PeriodData compute_periods(const CurveFamily& fam, int nodes = 128) {
  int g = fam.genus();
  auto e = real_branch_points(fam);
  auto du = first_kind_numerators(g);
  auto dr = second_kind_numerators(fam);
  auto cycles = [&](const std::vector<CPoly>& forms, bool b_cycle) {
    Eigen::MatrixXcd M(g, g);
    for (int r = 0; r < g; ++r)
      for (int i = 0; i < g; ++i) {
        cplx acc = 0.0;
        if (!b_cycle)
          acc = 2.0 * segment_integral(e, static_cast<std::size_t>(2 * i), forms[static_cast<std::size_t>(r)], nodes);
        else
          for (int k = i; k < g; ++k) acc += 2.0 * segment_integral(e, static_cast<std::size_t>(2 * k + 1), forms[static_cast<std::size_t>(r)], nodes);
        M(r, i) = acc;
      }
    return M;
  };
  PeriodData pd{e, cycles(du, false), cycles(du, true), cycles(dr, false), cycles(dr, true), {}, {}, nodes};
  pd.tau = pd.omega.inverse() * pd.omega_prime;
  Eigen::MatrixXd im = 0.5 * (pd.tau.imag() + pd.tau.imag().transpose());
  if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(im).eigenvalues().maxCoeff() < 0) {
    pd.omega_prime = -pd.omega_prime;
    pd.eta_prime = -pd.eta_prime;
    pd.tau = -pd.tau;
  }
  check_riemann_matrix(pd.tau);
  pd.legendre = pd.omega * pd.eta_prime.transpose() - pd.omega_prime * pd.eta.transpose();
  return pd;
}

// Abel map in the chart t = x^{−1/2}: du_w = t^{w−1} dt / h(t), h² = Π(1 − e_k t²), h(0) = 1.
struct AbelOptions {
  std::vector<cplx> via;  // intermediate path vertices in the t-plane
  double sheet_tol = 1e-6;
};

namespace detail {

inline cplx q_of(const std::vector<double>& mu, cplx t) {
  // Q(t) = t^{2s} P(1/t²) = Σ_i μ_i t^{2(s−i)}
  cplx w = t * t, acc = 0.0;
  for (double c : mu) acc = acc * w + c;
  return acc;
}

inline std::vector<cplx> t_branch_points(const std::vector<double>& mu) {
  CPoly p(mu.begin(), mu.end());
  std::vector<cplx> out;
  for (auto e : poly_roots(p, static_cast<int>(mu.size()) - 1)) {
    if (std::abs(e) < 1e-14) continue;
    cplx t = 1.0 / std::sqrt(e);
    out.push_back(t);
    out.push_back(-t);
  }
  return out;
}

inline double segment_distance(cplx a, cplx b, cplx p) {
  cplx d = b - a;
  double len2 = std::norm(d);
  double s = len2 == 0 ? 0 : std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0, 1.0);
  return std::abs(a + s * d - p);
}

}  // namespace detail

struct AbelResult {
  Eigen::VectorXcd u;
  cplx h_end;
  bool mirrored = false;
};

inline AbelResult abel_integrate_path(const CurveFamily& fam, const std::vector<cplx>& path) {
  int g = fam.genus();
  auto mu = hyperelliptic_poly(fam);
  auto tb = detail::t_branch_points(mu);
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& xs = GL::abscissa();
  const auto& ws = GL::weights();
  std::vector<std::pair<double, double>> nodes;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    nodes.push_back({-xs[k], ws[k]});
    if (xs[k] != 0) nodes.push_back({xs[k], ws[k]});
  }
  std::sort(nodes.begin(), nodes.end());

  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(g);
  cplx h = 1.0;
  auto track = [&](cplx t) {
    cplx r = std::sqrt(detail::q_of(mu, t));
    cplx best = std::abs(r - h) <= std::abs(-r - h) ? r : -r;
    if (std::abs(best - h) > 0.5 * std::abs(h) && std::abs(h) > 1e-6)
      throw Error(ErrorKind::SheetLoss, "square-root branch jumped along the path");
    h = best;
    return h;
  };
  for (std::size_t v = 0; v + 1 < path.size(); ++v) {
    cplx A = path[v], B = path[v + 1];
    double total = std::abs(B - A);
    if (total == 0) continue;
    cplx dir = (B - A) / total;
    double pos = 0, max_len = total / 4;
    while (pos < total) {
      cplx p = A + pos * dir;
      double d = std::numeric_limits<double>::infinity();
      for (auto b : tb) d = std::min(d, std::abs(b - p));
      double len = std::min({total - pos, max_len, 0.5 * d});
      if (len < 1e-14 * std::max(1.0, total)) break;  // endpoint sits on a branch point
      for (auto [x, w] : nodes) {
        cplx t = p + (0.5 * (x + 1) * len) * dir;
        cplx hv = track(t);
        cplx tp = 1.0;
        for (int k = 0; k < g; ++k, tp *= t * t) u(k) += (0.5 * len * w) * dir * tp / hv;
      }
      pos += len;
      track(A + std::min(pos, total) * dir);
    }
  }
  return {u, h, false};
}

inline Eigen::VectorXcd abel_map(const CurveFamily& fam, const CurvePoint& P, const AbelOptions& opt = {}) {
  int s = fam.s();
  if (!on_curve(fam, P)) throw Error(ErrorKind::InvalidInput, "point is not on the curve");
  if (std::abs(P.x) < 1e-12) throw Error(ErrorKind::PathThroughBranchPoint, "x = 0 lies at t = ∞ in the chart");
  cplx tP = 1.0 / std::sqrt(P.x);
  std::vector<cplx> path{0.0};
  path.insert(path.end(), opt.via.begin(), opt.via.end());
  path.push_back(tP);
  auto tb = detail::t_branch_points(hyperelliptic_poly(fam));
  double scale = std::abs(tP);
  for (std::size_t v = 0; v + 1 < path.size(); ++v)
    for (auto b : tb)
      if (std::abs(b - tP) > 1e-9 * scale && detail::segment_distance(path[v], path[v + 1], b) < 1e-9 * scale) {
        if (!opt.via.empty()) throw Error(ErrorKind::PathThroughBranchPoint, "supplied path meets a branch point");
        AbelOptions detour = opt;
        detour.via = {tP * cplx(0.5, 0.35)};
        return abel_map(fam, P, detour);
      }
  auto r = abel_integrate_path(fam, path);
  cplx y_end = std::pow(tP, -s) * r.h_end;
  double tol = opt.sheet_tol * std::max(1.0, std::abs(P.y));
  if (std::abs(y_end - P.y) <= tol) return r.u;
  // the mirrored path t → −t reaches the other sheet with u → −u
  if (std::abs(y_end + P.y) <= tol) return -r.u;
  throw Error(ErrorKind::SheetLoss, "path endpoint is on neither sheet over x");
}

inline Eigen::VectorXcd abel_map(const CurveFamily& fam, const Divisor& D) {
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(fam.genus());
  for (const auto& p : D.points) u += abel_map(fam, p);
  return u;
}

// Jacobian data: σ(u) ∝ exp(½ uᵀκu) θ[δ](ω⁻¹u; τ), κ = −η ω⁻¹ with dr = N dx/(−2y).
struct Jacobian {
  CurveFamily fam;
  PeriodData pd;
  Eigen::MatrixXcd omega_inv, kappa;
  ThetaContext theta;
};

inline Eigen::VectorXcd reduced_argument(const Jacobian& J, const Eigen::VectorXcd& u) { return J.omega_inv * u; }

// The odd characteristic whose theta vanishes on the image of the curve.
inline Characteristic sigma_characteristic(const CurveFamily& fam, const PeriodData& pd) {
  int g = fam.genus();
  auto odd = half_characteristics(g, true);
  if (g == 1) return odd.front();
  Eigen::MatrixXcd winv = pd.omega.inverse();
  std::vector<CurvePoint> probes{lift_x_to_points(fam, cplx(0.31, 0.17))[0], lift_x_to_points(fam, cplx(-0.43, 0.29))[1]};
  double best = std::numeric_limits<double>::infinity(), second = best;
  Characteristic pick = odd.front();
  for (const auto& ch : odd) {
    auto ctx = make_theta_context(pd.tau, ch);
    double worst = 0;
    for (const auto& P : probes) {
      auto jet = theta_jet(ctx, winv * abel_map(fam, P), 0);
      worst = std::max(worst, std::abs(jet.value) / jet.abs_sum);
    }
    if (worst < best) {
      second = best;
      best = worst;
      pick = ch;
    } else {
      second = std::min(second, worst);
    }
  }
  if (best > 1e-8 || second < 1e-4) throw Error(ErrorKind::OnThetaDivisor, "no unique characteristic vanishes on the curve");
  return pick;
}

inline Jacobian make_jacobian(const CurveFamily& fam, int nodes = 128) {
  auto pd = compute_periods(fam, nodes);
  Eigen::MatrixXcd winv = pd.omega.inverse();
  Jacobian J{fam, pd, winv, -pd.eta * winv, make_theta_context(pd.tau, sigma_characteristic(fam, pd))};
  return J;
}

// ℘ values indexed by position in the gap list (gap w ↦ (w−1)/2).
struct WpValues {
  Eigen::VectorXcd u;
  Eigen::MatrixXcd wp2;
  std::vector<Eigen::MatrixXcd> wp3;  // wp3[i](j,k)

  static int idx(int gap) { return (gap - 1) / 2; }
  cplx wp(int a, int b) const { return wp2(idx(a), idx(b)); }
  cplx wp(int a, int b, int c) const { return wp3[static_cast<std::size_t>(idx(a))](idx(b), idx(c)); }
};

inline WpValues wp_from_theta(const Jacobian& J, const Eigen::VectorXcd& u) {
  int g = J.fam.genus();
  const auto& D = J.omega_inv;
  auto L = log_theta_derivatives(J.theta, D * u);
  WpValues W{u, -J.kappa - D.transpose() * L.d2 * D, {}};
  for (int i = 0; i < g; ++i) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g, g);
    for (int a = 0; a < g; ++a) m -= D(a, i) * (D.transpose() * L.d3[static_cast<std::size_t>(a)] * D);
    W.wp3.push_back(m);
  }
  return W;
}

struct IdentityCheck {
  std::string identity;
  cplx lhs, rhs;
  double abs_err;
};

inline nlohmann::ordered_json to_json(const IdentityCheck& c) {
  return {{"identity", c.identity}, {"lhs", {c.lhs.real(), c.lhs.imag()}}, {"rhs", {c.rhs.real(), c.rhs.imag()}}, {"abs_err", c.abs_err}};
}

inline std::vector<IdentityCheck> verify_inversion(const Jacobian& J, const Divisor& D) {
  const auto& fam = J.fam;
  int g = fam.genus();
  if (static_cast<int>(D.points.size()) != g) throw Error(ErrorKind::InvalidInput, "divisor degree differs from the genus");
  if (!D.non_special) throw Error(ErrorKind::SpecialDivisor, "divisor contains a point and its conjugate");
  auto W = wp_from_theta(J, abel_map(fam, D));
  std::vector<IdentityCheck> out;
  auto add = [&](std::string id, cplx l, cplx r) { out.push_back({std::move(id), l, r, std::abs(l - r)}); };
  if (g == 2) {
    const auto& P = D.points;
    add("x1+x2 = P11", P[0].x + P[1].x, W.wp(1, 1));
    add("x1*x2 = -P13", P[0].x * P[1].x, -W.wp(1, 3));
    for (int k = 0; k < 2; ++k)
      add("y" + std::to_string(k + 1) + " = -(x" + std::to_string(k + 1) + "*P111 + P113)/2", P[static_cast<std::size_t>(k)].y,
          -0.5 * (P[static_cast<std::size_t>(k)].x * W.wp(1, 1, 1) + W.wp(1, 1, 3)));
  }
  // x^g − Σ ℘_{1,2i−1} x^{g−i} = 0 and 2y + Σ ℘_{1,1,2i−1} x^{g−i} = 0 at each point
  for (std::size_t k = 0; k < D.points.size(); ++k) {
    const auto& P = D.points[k];
    cplx r2 = std::pow(P.x, g), r3 = 2.0 * P.y;
    for (int i = 1; i <= g; ++i) {
      r2 -= W.wp(1, 2 * i - 1) * std::pow(P.x, g - i);
      r3 += W.wp(1, 1, 2 * i - 1) * std::pow(P.x, g - i);
    }
    add("R" + std::to_string(2 * g) + "(P" + std::to_string(k + 1) + ") = 0", r2, 0.0);
    add("R" + std::to_string(2 * g + 1) + "(P" + std::to_string(k + 1) + ") = 0", r3, 0.0);
  }
  return out;
}

}  // namespace jip
