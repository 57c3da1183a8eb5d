#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "jip/curve.hpp"

namespace jip {

struct Divisor {
  std::vector<CurvePoint> points;
  bool non_special = true;
};

// No n points of D over one x (a full fibre of the projection to x).
inline bool is_non_special(const CurveFamily& fam, const std::vector<CurvePoint>& pts, double tol = 1e-7) {
  std::vector<bool> used(pts.size(), false);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (used[a]) continue;
    std::vector<cplx> ys{pts[a].y};
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      if (!used[b] && std::abs(pts[b].x - pts[a].x) <= tol * std::max(1.0, std::abs(pts[a].x))) {
        used[b] = true;
        ys.push_back(pts[b].y);
      }
    if (static_cast<int>(ys.size()) < fam.n()) continue;
    // distinct sheets over the same x
    int distinct = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      bool fresh = true;
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(ys[i] - ys[j]) <= tol * std::max(1.0, std::abs(ys[i]))) fresh = false;
      distinct += fresh;
    }
    if (distinct >= fam.n()) return false;
  }
  return true;
}

inline Divisor make_divisor(const CurveFamily& fam, std::vector<CurvePoint> pts) {
  for (const auto& p : pts)
    if (!on_curve(fam, p)) throw Error(ErrorKind::InvalidInput, "divisor point is not on the curve");
  Divisor D{std::move(pts), true};
  D.non_special = is_non_special(fam, D.points);
  return D;
}

// A point over x uniform in the unit disc, on a random sheet.
inline CurvePoint random_curve_point(const CurveFamily& fam, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  cplx x;
  do x = cplx(U(rng), U(rng));
  while (std::abs(x) > 1.0);
  auto fibre = lift_x_to_points(fam, x);
  std::uniform_int_distribution<std::size_t> pick(0, fibre.size() - 1);
  return fibre[pick(rng)];
}

inline Divisor random_divisor(const CurveFamily& fam, std::mt19937_64& rng) {
  std::vector<CurvePoint> pts;
  for (int k = 0; k < fam.genus(); ++k) pts.push_back(random_curve_point(fam, rng));
  return make_divisor(fam, std::move(pts));
}

// rho[l][j] = ρ_j^{[2g+l]}(x), ascending coefficients; R_{2g+l} = Σ_j y^j ρ_j(x).
struct NumericRSystem {
  CurveFamily fam;
  std::vector<std::vector<CPoly>> rho;

  cplx eval(std::size_t l, cplx x, cplx y) const {
    cplx acc = 0.0, yp = 1.0;
    for (const auto& r : rho[l]) {
      acc += yp * poly_eval(r, x);
      yp *= y;
    }
    return acc;
  }
  double scale(std::size_t l, cplx x, cplx y) const {
    double sc = 0, ay = 1;
    for (const auto& r : rho[l]) {
      double ax = 1;
      for (auto c : r) {
        sc += std::abs(c) * ax * ay;
        ax *= std::abs(x);
      }
      ay *= std::abs(y);
    }
    return std::max(sc, 1e-300);
  }
};

inline int rho_degree_bound(const CurveFamily& fam, int l, int j) {
  int w = 2 * fam.genus() + l - j * fam.s();
  return w < 0 ? -1 : w / fam.n();
}

inline bool respects_degree_bounds(const NumericRSystem& sys, double tol = 0.0) {
  for (std::size_t l = 0; l < sys.rho.size(); ++l)
    for (std::size_t j = 0; j < sys.rho[l].size(); ++j) {
      const auto& p = sys.rho[l][j];
      int bound = rho_degree_bound(sys.fam, static_cast<int>(l), static_cast<int>(j));
      for (std::size_t k = 0; k < p.size(); ++k)
        if (static_cast<int>(k) > bound && std::abs(p[k]) > tol) return false;
    }
  return true;
}

inline NumericRSystem empty_rsystem(const CurveFamily& fam) {
  NumericRSystem sys{fam, {}};
  int L = fam.system_size();
  for (int l = 0; l < L; ++l) {
    std::vector<CPoly> row;
    for (int j = 0; j < fam.n(); ++j) row.emplace_back(static_cast<std::size_t>(std::max(0, rho_degree_bound(fam, l, j) + 1)), 0.0);
    sys.rho.push_back(row);
  }
  return sys;
}

// R_{2g+l} through D and l extra points, as the combination of the first g+l+1 monomials with top coefficient 1.
inline NumericRSystem rfunctions_from_divisor(const CurveFamily& fam, const Divisor& D, const std::vector<CurvePoint>& extra) {
  int g = fam.genus();
  int L = fam.system_size();
  if (static_cast<int>(D.points.size()) != g) throw Error(ErrorKind::InvalidInput, "divisor degree differs from the genus");
  if (static_cast<int>(extra.size()) < L - 1) throw Error(ErrorKind::InvalidInput, "not enough extra points");
  NumericRSystem sys = empty_rsystem(fam);
  for (int l = 0; l < L; ++l) {
    auto mons = monomial_basis(fam, g + l + 1);
    std::vector<CurvePoint> pts = D.points;
    pts.insert(pts.end(), extra.begin(), extra.begin() + l);
    int rows = g + l, cols = g + l + 1;
    Eigen::MatrixXcd A(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const auto& m = mons[static_cast<std::size_t>(c)];
        A(r, c) = std::pow(pts[static_cast<std::size_t>(r)].y, m.j) * std::pow(pts[static_cast<std::size_t>(r)].x, m.i);
      }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(rows - 1) <= 1e-11 * sv(0))
      throw Error(ErrorKind::DegenerateDeterminant, "points do not determine R_" + std::to_string(2 * g + l));
    Eigen::VectorXcd c = svd.matrixV().col(cols - 1);
    if (std::abs(c(cols - 1)) <= 1e-12 * c.norm())
      throw Error(ErrorKind::DegenerateDeterminant, "R_" + std::to_string(2 * g + l) + " has no top monomial");
    c /= c(cols - 1);
    for (int k = 0; k < cols; ++k) {
      const auto& m = mons[static_cast<std::size_t>(k)];
      sys.rho[static_cast<std::size_t>(l)][static_cast<std::size_t>(m.j)][static_cast<std::size_t>(m.i)] = c(k);
    }
    for (int r = 0; r < rows; ++r) {
      const auto& p = pts[static_cast<std::size_t>(r)];
      if (std::abs(sys.eval(static_cast<std::size_t>(l), p.x, p.y)) > 1e-8 * sys.scale(static_cast<std::size_t>(l), p.x, p.y))
        throw Error(ErrorKind::DegenerateDeterminant, "constructed R does not vanish on the divisor");
    }
  }
  return sys;
}

inline NumericRSystem rfunctions_from_divisor(const CurveFamily& fam, const Divisor& D, std::mt19937_64& rng) {
  std::vector<CurvePoint> extra;
  for (int l = 1; l < fam.system_size(); ++l) extra.push_back(random_curve_point(fam, rng));
  return rfunctions_from_divisor(fam, D, extra);
}

// Square block 𝐑(x): rows l = 0 … n−2, columns j = 0 … n−2.
inline int block_size(const CurveFamily& fam) { return fam.n() - 1; }

inline CPoly chi_polynomial_raw(const NumericRSystem& sys) {
  int k = block_size(sys.fam);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  CPoly det;
  do {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) inversions += perm[a] > perm[b];
    CPoly term{inversions % 2 ? -1.0 : 1.0};
    for (int r = 0; r < k; ++r) term = poly_mul(term, sys.rho[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[r])]);
    det = poly_add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// 𝒳(x) = det 𝐑(x), truncated to degree g.
inline CPoly chi_polynomial(const NumericRSystem& sys, double collapse_tol = 1e-10) {
  int g = sys.fam.genus();
  CPoly det = chi_polynomial_raw(sys);
  det.resize(std::max(det.size(), static_cast<std::size_t>(g + 1)), 0.0);
  double nrm = poly_norm(det);
  if (nrm == 0.0 || std::abs(det[static_cast<std::size_t>(g)]) < collapse_tol * nrm)
    throw Error(ErrorKind::DegreeCollapse, "leading coefficient of chi cancels: special or near-special divisor");
  for (std::size_t k = static_cast<std::size_t>(g) + 1; k < det.size(); ++k)
    if (std::abs(det[k]) > 1e-6 * nrm) throw Error(ErrorKind::DegreeCollapse, "chi has degree above the genus");
  det.resize(static_cast<std::size_t>(g + 1));
  return det;
}

struct RootCluster {
  cplx x;
  int multiplicity = 1;
};

inline std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol = 1e-7) {
  std::vector<RootCluster> out;
  std::vector<int> count;
  for (auto r : roots) {
    bool merged = false;
    for (auto& c : out)
      if (std::abs(c.x - r) <= tol * std::max(1.0, std::abs(r))) {
        c.x = (c.x * static_cast<double>(c.multiplicity) + r) / static_cast<double>(c.multiplicity + 1);
        ++c.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.push_back({r, 1});
  }
  return out;
}

inline Eigen::MatrixXcd r_matrix_at(const NumericRSystem& sys, cplx x) {
  int k = block_size(sys.fam);
  Eigen::MatrixXcd M(k, k);
  for (int l = 0; l < k; ++l)
    for (int j = 0; j < k; ++j) M(l, j) = poly_eval(sys.rho[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)], x);
  return M;
}

inline Divisor solve_divisor(const NumericRSystem& sys) {
  const auto& fam = sys.fam;
  int n = fam.n();
  CPoly chi = chi_polynomial(sys);
  auto clusters = cluster_roots(poly_roots(chi, fam.genus()));
  std::vector<CurvePoint> pts;
  for (const auto& cl : clusters) {
    cplx x = cl.x;
    if (n == 2) {
      // R_{2g+1} = ρ_1(x) y + ρ_0(x)
      if (cl.multiplicity > 1) throw Error(ErrorKind::NullSpaceDimensionError, "repeated x on a hyperelliptic curve");
      cplx a = poly_eval(sys.rho[1][1], x), b = poly_eval(sys.rho[1][0], x);
      if (std::abs(a) <= 1e-12 * std::max(1.0, std::abs(b))) throw Error(ErrorKind::NullSpaceDimensionError, "y undetermined");
      pts.push_back({x, -b / a});
      continue;
    }
    Eigen::MatrixXcd M = r_matrix_at(sys, x);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int k = static_cast<int>(sv.size());
    // null-space threshold against the size of the entries, not σ_max (which vanishes at a double root)
    double top = 0;
    for (int l = 0; l < k; ++l)
      for (int j = 0; j < k; ++j) {
        double ax = 1;
        for (auto c : sys.rho[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]) {
          top = std::max(top, std::abs(c) * ax);
          ax *= std::abs(x);
        }
      }
    top = std::max(top, 1e-300);
    int dim = 0;
    for (int i = 0; i < k; ++i) dim += sv(i) <= 1e-6 * top;
    if (cl.multiplicity == 1) {
      if (dim != 1) throw Error(ErrorKind::NullSpaceDimensionError, "null space dimension " + std::to_string(dim));
      Eigen::VectorXcd v = svd.matrixV().col(k - 1);
      if (std::abs(v(0)) <= 1e-12 * v.norm()) throw Error(ErrorKind::NullSpaceDimensionError, "null vector has no unit entry");
      pts.push_back({x, v(1) / v(0)});
      continue;
    }
    // repeated x: the sheets over x whose Y-vector lies in the null space
    if (dim != cl.multiplicity) throw Error(ErrorKind::NullSpaceDimensionError, "null space does not match multiplicity");
    Eigen::MatrixXcd N = svd.matrixV().rightCols(dim);
    std::vector<cplx> fit;
    for (const auto& p : lift_x_to_points(fam, x)) {
      Eigen::VectorXcd Y(k);
      cplx yp = 1.0;
      for (int j = 0; j < k; ++j, yp *= p.y) Y(j) = yp;
      if ((Y - N * (N.adjoint() * Y)).norm() <= 1e-5 * Y.norm()) fit.push_back(p.y);
    }
    if (static_cast<int>(fit.size()) != cl.multiplicity)
      throw Error(ErrorKind::NullSpaceDimensionError,
                  std::to_string(fit.size()) + " sheets fit a root of multiplicity " + std::to_string(cl.multiplicity));
    for (auto y : fit) pts.push_back({x, y});
  }
  Divisor D{pts, is_non_special(fam, pts)};
  return D;
}

// Max over matched pairs of |P − Q| / max(1, |P|), greedy nearest matching.
inline double divisor_distance(const Divisor& a, const Divisor& b) {
  if (a.points.size() != b.points.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.points.size(), false);
  double worst = 0;
  for (const auto& p : a.points) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (std::size_t j = 0; j < b.points.size(); ++j) {
      if (used[j]) continue;
      double d = std::hypot(std::abs(p.x - b.points[j].x), std::abs(p.y - b.points[j].y));
      if (d < best) {
        best = d;
        bi = j;
      }
    }
    used[bi] = true;
    double sc = std::max(1.0, std::hypot(std::abs(p.x), std::abs(p.y)));
    worst = std::max(worst, best / sc);
  }
  return worst;
}

struct RoundTripResult {
  double max_error = 0;
  int chi_degree = 0;
  bool ok = false;
};

inline RoundTripResult round_trip(const CurveFamily& fam, const Divisor& D, std::mt19937_64& rng, double tol = 1e-6) {
  auto sys = rfunctions_from_divisor(fam, D, rng);
  if (!respects_degree_bounds(sys)) throw Error(ErrorKind::DegenerateDeterminant, "degree bound violated");
  RoundTripResult r;
  r.chi_degree = effective_degree(chi_polynomial(sys), 1e-10);
  auto back = solve_divisor(sys);
  r.max_error = divisor_distance(D, back);
  r.ok = r.max_error < tol && r.chi_degree == fam.genus();
  return r;
}

}  // namespace jip
