#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "jip/errors.hpp"

namespace jip {

using cplx = std::complex<double>;
using CPoly = std::vector<cplx>;  // ascending powers

inline cplx poly_eval(const CPoly& p, cplx x) {
  cplx acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

inline CPoly poly_derivative(const CPoly& p) {
  CPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
  return d;
}

inline CPoly poly_mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline CPoly poly_add(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline double poly_norm(const CPoly& p) {
  double s = 0;
  for (auto c : p) s = std::max(s, std::abs(c));
  return s;
}

// Degree after dropping leading coefficients below rel_tol * max|coefficient|.
inline int effective_degree(const CPoly& p, double rel_tol) {
  double nrm = poly_norm(p);
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && std::abs(p[static_cast<std::size_t>(d)]) <= rel_tol * nrm) --d;
  return d;
}

// Roots of the polynomial of degree `degree` (leading coefficient p[degree]) via companion-matrix eigenvalues,
// each polished by a few Newton steps.
inline std::vector<cplx> poly_roots(const CPoly& p, int degree) {
  if (degree < 0 || static_cast<std::size_t>(degree) >= p.size() || p[static_cast<std::size_t>(degree)] == 0.0)
    throw Error(ErrorKind::RootFindingFailure, "invalid degree for root finding");
  if (degree == 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(degree, degree);
  cplx lead = p[static_cast<std::size_t>(degree)];
  for (int i = 1; i < degree; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) C(i, degree - 1) = -p[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::RootFindingFailure, "companion eigenvalue solver failed");
  CPoly q(p.begin(), p.begin() + degree + 1);
  CPoly dq = poly_derivative(q);
  std::vector<cplx> roots;
  for (int i = 0; i < degree; ++i) {
    cplx r = es.eigenvalues()(i);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw Error(ErrorKind::RootFindingFailure, "non-finite eigenvalue");
    for (int it = 0; it < 3; ++it) {
      cplx fv = poly_eval(q, r), dv = poly_eval(dq, r);
      if (std::abs(dv) < 1e-300) break;
      cplx step = fv / dv;
      cplx cand = r - step;
      if (std::abs(poly_eval(q, cand)) >= std::abs(fv)) break;
      r = cand;
    }
    roots.push_back(r);
  }
  return roots;
}

}  // namespace jip
