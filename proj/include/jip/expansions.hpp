#pragma once

#include <vector>

#include "jip/curve.hpp"
#include "jip/laurent_series.hpp"

namespace jip {

inline int default_order(const CurveFamily& fam) { return 2 * fam.genus() + fam.n() + 2; }

// Local data at infinity: x = ξ^{−n}, y = ξ^{−s} h(ξ).
// `order` is the truncation of dx/∂_y f (leading term ξ^{2g−2}); every series here keeps
// relative precision order − (2g − 2).
struct InfinityChart {
  CurveFamily fam;
  int order = 0;
  int precision = 0;
  LaurentSeries h;                 // y ξ^s
  std::vector<LaurentSeries> h_pow;  // h^0 … h^n
  LaurentSeries x_series;
  LaurentSeries y_series;
  LaurentSeries dyf_series;
  LaurentSeries dx_series;
  LaurentSeries factor;  // (dx/dξ)/∂_y f
};

namespace detail {

// F(h) = 1 − h^n + Σ λ_k ξ^k h^j  and  F'(h).
inline std::pair<LaurentSeries, LaurentSeries> puiseux_residual(const CurveFamily& fam, const LaurentSeries& h, int prec) {
  int n = fam.n();
  std::vector<LaurentSeries> pw{LaurentSeries::monomial(1, 0, prec)};
  for (int k = 1; k <= n; ++k) pw.push_back((pw.back() * h).truncated(prec));
  LaurentSeries F = LaurentSeries::monomial(1, 0, prec) - pw[static_cast<std::size_t>(n)];
  LaurentSeries dF = WeightedPoly(-n) * pw[static_cast<std::size_t>(n - 1)];
  for (const auto& t : fam.terms()) {
    WeightedPoly lam = fam.lambda(t.k);
    if (lam.is_zero() || t.k >= prec) continue;
    F = F + (lam * pw[static_cast<std::size_t>(t.j)]).shifted(t.k).truncated(prec);
    if (t.j > 0) dF = dF + (lam.scaled(Rational(t.j)) * pw[static_cast<std::size_t>(t.j - 1)]).shifted(t.k).truncated(prec);
  }
  return {F.truncated(prec), dF.truncated(prec)};
}

}  // namespace detail

inline InfinityChart expand_at_infinity(const CurveFamily& fam, int order) {
  int g = fam.genus(), n = fam.n(), s = fam.s();
  int prec = order - (2 * g - 2);
  if (prec < 1) throw Error(ErrorKind::TruncationTooShallow, "order must exceed 2g-2");
  InfinityChart ch{fam, order, prec, {}, {}, {}, {}, {}, {}, {}};

  LaurentSeries h = LaurentSeries::monomial(1, 0, 1);
  int cur = 1;
  while (cur < prec) {
    cur = std::min(2 * cur, prec);
    h = h.padded(cur);
    auto [F, dF] = detail::puiseux_residual(fam, h, cur);
    if (dF.is_zero() || dF.lowest_exponent() != 0)
      throw Error(ErrorKind::NewtonStall, "derivative of the Puiseux equation is not a unit");
    h = (h - F * series_invert(dF)).truncated(cur);
  }
  h = h.truncated(prec);
  auto [F, dF] = detail::puiseux_residual(fam, h, prec);
  if (!F.is_zero()) throw Error(ErrorKind::NewtonStall, "Newton iteration did not converge: " + F.to_string());

  ch.h = h;
  ch.h_pow.push_back(LaurentSeries::monomial(1, 0, prec));
  for (int k = 1; k <= n; ++k) ch.h_pow.push_back((ch.h_pow.back() * h).truncated(prec));
  ch.x_series = LaurentSeries::monomial(1, -n, -n + prec);
  ch.y_series = h.shifted(-s);
  ch.dyf_series = dF.shifted(-(n - 1) * s);
  ch.dx_series = LaurentSeries::monomial(-n, -n - 1, -n - 1 + prec);
  ch.factor = (WeightedPoly(-n) * series_invert(dF)).shifted(2 * g - 2);
  return ch;
}

inline InfinityChart expand_at_infinity(const CurveFamily& fam) { return expand_at_infinity(fam, default_order(fam)); }

inline LaurentSeries monomial_series(const InfinityChart& ch, const Monomial& m) {
  if (m.j > ch.fam.n()) throw Error(ErrorKind::InvalidInput, "monomial y-degree exceeds n");
  return ch.h_pow[static_cast<std::size_t>(m.j)].shifted(-m.weight);
}

inline LaurentSeries function_series(const InfinityChart& ch, const EntireRationalFn& fn) {
  int w = fn.weight();
  LaurentSeries acc = LaurentSeries::zero(-w + ch.precision);
  for (const auto& [wt, t] : fn.terms) acc = acc + t.second * monomial_series(ch, t.first);
  return acc;
}

// Differential fn · dx/∂_y f as a series in ξ (coefficient of dξ).
inline LaurentSeries differential_series(const InfinityChart& ch, const EntireRationalFn& fn) {
  return function_series(ch, fn) * ch.factor;
}

struct FirstKindBasis {
  std::vector<int> gaps;
  std::vector<Monomial> numerators;  // numerators[i] pairs with gaps[i]
  std::vector<LaurentSeries> du_series;
  std::vector<LaurentSeries> u_series;
};

inline FirstKindBasis first_kind_basis(const InfinityChart& ch) {
  const auto& fam = ch.fam;
  int g = fam.genus();
  if (ch.order < 2 * g + 2) throw Error(ErrorKind::TruncationTooShallow, "chart order below 2g+2");
  FirstKindBasis fb;
  fb.gaps = fam.gaps();
  for (int w : fb.gaps) {
    Monomial m = monomial_with_label(fam, -w);
    LaurentSeries du = monomial_series(ch, m) * ch.factor;
    if (du.lowest_exponent() != w - 1 || !(du.leading_coefficient() == WeightedPoly(1)))
      throw Error(ErrorKind::InvalidInput, "unexpected leading term of du_" + std::to_string(w));
    fb.numerators.push_back(m);
    fb.du_series.push_back(du);
    fb.u_series.push_back(series_integrate(du));
  }
  return fb;
}

struct SecondKindBasis {
  std::vector<EntireRationalFn> numerators;  // index ℓ−1
  std::vector<LaurentSeries> dr_series;
  std::vector<LaurentSeries> r_series;
};

// dr̃_ℓ = (ℓ 𝓜_ℓ + Σ_{0<κ<ℓ} d_κ 𝓜_κ) dx/∂_y f with res u_k dr̃_ℓ = 0 for gaps k < ℓ.
inline SecondKindBasis associated_second_kind(const InfinityChart& ch, const FirstKindBasis& fb) {
  const auto& fam = ch.fam;
  SecondKindBasis sb;
  int L = fam.system_size();
  std::vector<LaurentSeries> e_series;  // 𝓜_κ dx/∂_y f, index κ−1
  for (int l = 1; l <= L; ++l) e_series.push_back(monomial_series(ch, monomial_with_label(fam, l)) * ch.factor);
  auto u_of = [&](int w) -> const LaurentSeries& { return fb.u_series[static_cast<std::size_t>(fam.gap_index(w))]; };

  for (int l = 1; l <= L; ++l) {
    EntireRationalFn num;
    num.add(monomial_with_label(fam, l), WeightedPoly(l));
    LaurentSeries dr = WeightedPoly(l) * e_series[static_cast<std::size_t>(l - 1)];
    for (int k = l - 1; k >= 1; --k) {
      if (!fam.is_gap(k)) continue;
      WeightedPoly diag = series_residue(u_of(k) * e_series[static_cast<std::size_t>(k - 1)]);
      if (diag.is_zero() || !diag.is_constant())
        throw Error(ErrorKind::UnsolvableCorrection, "singular residue system at k=" + std::to_string(k));
      WeightedPoly rhs = series_residue(u_of(k) * dr);
      WeightedPoly d = (-rhs).scaled(Rational(1) / diag.constant_term());
      if (d.is_zero()) continue;
      num.add(monomial_with_label(fam, k), d);
      dr = dr + d * e_series[static_cast<std::size_t>(k - 1)];
    }
    for (int k = 1; k < l; ++k)
      if (fam.is_gap(k) && !series_residue(u_of(k) * dr).is_zero())
        throw Error(ErrorKind::UnsolvableCorrection, "residue condition not met for l=" + std::to_string(l));
    sb.numerators.push_back(num);
    sb.dr_series.push_back(dr);
    sb.r_series.push_back(series_integrate(dr));
  }
  return sb;
}

// Entry (i, ℓ) = res u_{w_i} dr_ℓ.
inline std::vector<std::vector<WeightedPoly>> check_rcond(const FirstKindBasis& fb, const SecondKindBasis& sb) {
  std::vector<std::vector<WeightedPoly>> M(fb.u_series.size(), std::vector<WeightedPoly>(sb.dr_series.size()));
  for (std::size_t i = 0; i < fb.u_series.size(); ++i)
    for (std::size_t l = 0; l < sb.dr_series.size(); ++l) M[i][l] = series_residue(fb.u_series[i] * sb.dr_series[l]);
  return M;
}

// Column ℓ should be the unit vector of gap ℓ, or zero when ℓ is not a gap.
inline bool rcond_is_identity(const std::vector<std::vector<WeightedPoly>>& M, const std::vector<int>& gaps) {
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t l = 0; l < M[i].size(); ++l) {
      WeightedPoly want = gaps[i] == static_cast<int>(l) + 1 ? WeightedPoly(1) : WeightedPoly{};
      if (!(M[i][l] == want)) return false;
    }
  return true;
}

}  // namespace jip
