#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "jip/weighted_poly.hpp"

namespace jip {

// Truncated Laurent series Σ_{low ≤ e < trunc} c_e ξ^e.
class LaurentSeries {
 public:
  LaurentSeries() = default;  // zero, O(ξ^0)

  static LaurentSeries zero(int trunc) {
    LaurentSeries s;
    s.low_ = s.trunc_ = trunc;
    return s;
  }
  static LaurentSeries monomial(const WeightedPoly& c, int exponent, int trunc) {
    if (exponent >= trunc) return zero(trunc);
    LaurentSeries s;
    s.low_ = exponent;
    s.trunc_ = trunc;
    s.c_.assign(static_cast<std::size_t>(trunc - exponent), WeightedPoly{});
    s.c_[0] = c;
    s.normalize();
    return s;
  }
  // Coefficients at low, low+1, ...; missing ones up to trunc are zero.
  static LaurentSeries from_coefficients(int low, std::vector<WeightedPoly> coeffs, int trunc) {
    if (low + static_cast<int>(coeffs.size()) > trunc) coeffs.resize(static_cast<std::size_t>(std::max(0, trunc - low)));
    LaurentSeries s;
    s.low_ = std::min(low, trunc);
    s.trunc_ = trunc;
    s.c_ = std::move(coeffs);
    s.c_.resize(static_cast<std::size_t>(trunc - s.low_));
    s.normalize();
    return s;
  }

  int lowest_exponent() const { return low_; }
  int truncation_order() const { return trunc_; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<WeightedPoly>& coefficients() const { return c_; }

  WeightedPoly coefficient(int e) const {
    if (e >= trunc_)
      throw Error(ErrorKind::TruncationTooShallow,
                  "coefficient of xi^" + std::to_string(e) + " beyond O(xi^" + std::to_string(trunc_) + ")");
    if (e < low_) return {};
    return c_[static_cast<std::size_t>(e - low_)];
  }
  const WeightedPoly& leading_coefficient() const {
    if (c_.empty()) throw Error(ErrorKind::NonUnitLeadingCoefficient, "zero series");
    return c_.front();
  }

  LaurentSeries truncated(int t) const {
    if (t >= trunc_) return *this;
    LaurentSeries s = *this;
    s.trunc_ = t;
    if (t <= low_) {
      s.c_.clear();
      s.low_ = t;
    } else {
      s.c_.resize(static_cast<std::size_t>(t - low_));
    }
    s.normalize();
    return s;
  }
  // Declares the unknown coefficients up to t to be zero (exact polynomials, Newton steps).
  LaurentSeries padded(int t) const {
    if (t <= trunc_) return *this;
    LaurentSeries s = *this;
    if (s.c_.empty()) s.low_ = t;
    else s.c_.resize(static_cast<std::size_t>(t - s.low_));
    s.trunc_ = t;
    return s;
  }
  // Multiplication by ξ^k.
  LaurentSeries shifted(int k) const {
    LaurentSeries s = *this;
    s.low_ += k;
    s.trunc_ += k;
    return s;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    int t = std::min(a.trunc_, b.trunc_);
    int lo = std::min({a.low_, b.low_, t});
    std::vector<WeightedPoly> c(static_cast<std::size_t>(t - lo));
    for (int e = a.low_; e < std::min(a.trunc_, t); ++e) c[e - lo] += a.c_[e - a.low_];
    for (int e = b.low_; e < std::min(b.trunc_, t); ++e) c[e - lo] += b.c_[e - b.low_];
    return from_coefficients(lo, std::move(c), t);
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    int t = std::min(a.trunc_ + b.low_, b.trunc_ + a.low_);
    int lo = std::min(a.low_ + b.low_, t);
    std::vector<WeightedPoly> c(static_cast<std::size_t>(t - lo));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      int ei = a.low_ + static_cast<int>(i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        int e = ei + b.low_ + static_cast<int>(j);
        if (e >= t) break;
        if (b.c_[j].is_zero()) continue;
        c[static_cast<std::size_t>(e - lo)] += a.c_[i] * b.c_[j];
      }
    }
    return from_coefficients(lo, std::move(c), t);
  }
  friend LaurentSeries operator*(const WeightedPoly& k, const LaurentSeries& a) {
    LaurentSeries s = a;
    for (auto& c : s.c_) c = k * c;
    s.normalize();
    return s;
  }
  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

  LaurentSeries derivative() const {
    std::vector<WeightedPoly> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i].scaled(Rational(low_ + static_cast<int>(i)));
    return from_coefficients(low_ - 1, std::move(c), trunc_ - 1);
  }

  // Same truncation, all coefficients substituted.
  LaurentSeries substitute(const std::map<int, WeightedPoly>& values) const {
    LaurentSeries s = *this;
    for (auto& c : s.c_) c = c.substitute(values);
    s.normalize();
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (any) os << " + ";
      any = true;
      os << "(" << c_[i].to_string() << ")*t^" << (low_ + static_cast<int>(i));
    }
    if (any) os << " + ";
    os << "O(t^" << trunc_ << ")";
    return os.str();
  }

 private:
  void normalize() {
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) ++k;
    if (k > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
      low_ += static_cast<int>(k);
    }
    if (c_.empty()) low_ = trunc_;
  }

  int low_ = 0;
  int trunc_ = 0;
  std::vector<WeightedPoly> c_;
};

enum class SeriesOp { add, mul };

inline LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op) {
  return op == SeriesOp::add ? a + b : a * b;
}

inline LaurentSeries series_invert(const LaurentSeries& a) {
  if (a.is_zero()) throw Error(ErrorKind::NonUnitLeadingCoefficient, "inverting a zero series");
  const WeightedPoly& lead = a.leading_coefficient();
  if (!lead.is_constant()) throw Error(ErrorKind::NonUnitLeadingCoefficient, "leading coefficient " + lead.to_string());
  Rational inv_c = Rational(1) / lead.constant_term();
  int lo = a.lowest_exponent();
  int prec = a.truncation_order() - lo;
  std::vector<WeightedPoly> b(static_cast<std::size_t>(prec));
  const auto& ac = a.coefficients();
  b[0] = WeightedPoly(inv_c);
  for (int k = 1; k < prec; ++k) {
    WeightedPoly acc;
    for (int i = 1; i <= k; ++i)
      if (!ac[i].is_zero() && !b[k - i].is_zero()) acc += ac[i] * b[k - i];
    b[k] = (-acc).scaled(inv_c);
  }
  return LaurentSeries::from_coefficients(-lo, std::move(b), -lo + prec);
}

inline LaurentSeries series_nth_root(const LaurentSeries& a, int n) {
  if (n <= 0) throw Error(ErrorKind::InvalidInput, "root index must be positive");
  if (a.is_zero()) throw Error(ErrorKind::NonUnitLeadingCoefficient, "root of a zero series");
  int lo = a.lowest_exponent();
  if (lo % n != 0) throw Error(ErrorKind::ExponentNotDivisible, std::to_string(lo) + " not divisible by " + std::to_string(n));
  const WeightedPoly& lead = a.leading_coefficient();
  if (!(lead.is_constant() && lead.constant_term().is_one()))
    throw Error(ErrorKind::NonUnitLeadingCoefficient, "leading coefficient must be 1");
  int prec = a.truncation_order() - lo;
  const auto& ac = a.coefficients();
  Rational alpha(1, n);
  std::vector<WeightedPoly> b(static_cast<std::size_t>(prec));
  b[0] = WeightedPoly(1);
  // k b_k = Σ_{i=1}^{k} (α i − (k − i)) a_i b_{k−i}
  for (int k = 1; k < prec; ++k) {
    WeightedPoly acc;
    for (int i = 1; i <= k; ++i) {
      if (ac[i].is_zero() || b[k - i].is_zero()) continue;
      acc += (ac[i] * b[k - i]).scaled(alpha * Rational(i) - Rational(k - i));
    }
    b[k] = acc.scaled(Rational(1, k));
  }
  return LaurentSeries::from_coefficients(lo / n, std::move(b), lo / n + prec);
}

inline WeightedPoly series_residue(const LaurentSeries& a) {
  if (a.truncation_order() <= -1)
    throw Error(ErrorKind::TruncationTooShallow, "residue needs the xi^-1 coefficient, series is O(xi^" +
                                                     std::to_string(a.truncation_order()) + ")");
  return a.coefficient(-1);
}

inline LaurentSeries series_integrate(const LaurentSeries& a) {
  if (a.lowest_exponent() <= -1 && !series_residue(a).is_zero())
    throw Error(ErrorKind::ResidueObstruction, "xi^-1 coefficient " + series_residue(a).to_string());
  const auto& ac = a.coefficients();
  std::vector<WeightedPoly> c(ac.size());
  for (std::size_t i = 0; i < ac.size(); ++i) {
    int e = a.lowest_exponent() + static_cast<int>(i);
    if (e != -1) c[i] = ac[i].scaled(Rational(1, e + 1));
  }
  return LaurentSeries::from_coefficients(a.lowest_exponent() + 1, std::move(c), a.truncation_order() + 1);
}

}  // namespace jip
