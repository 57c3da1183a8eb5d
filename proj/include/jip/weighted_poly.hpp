#pragma once

#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jip/rational.hpp"

namespace jip {

// Product of powers of the curve parameters, stored as sorted (k, exponent) pairs.
class LambdaMonomial {
 public:
  LambdaMonomial() = default;
  static LambdaMonomial var(int k, int e = 1) {
    LambdaMonomial m;
    if (e != 0) m.f_.emplace_back(k, e);
    return m;
  }
  static LambdaMonomial from_factors(std::vector<std::pair<int, int>> f) {
    LambdaMonomial m;
    for (auto [k, e] : f) m = m * var(k, e);
    return m;
  }

  bool is_one() const { return f_.empty(); }
  const std::vector<std::pair<int, int>>& factors() const { return f_; }
  int weight() const {
    int w = 0;
    for (auto [k, e] : f_) w += k * e;
    return w;
  }
  int degree() const {
    int d = 0;
    for (auto [k, e] : f_) d += e;
    return d;
  }
  int exponent(int k) const {
    for (auto [kk, e] : f_)
      if (kk == k) return e;
    return 0;
  }

  LambdaMonomial operator*(const LambdaMonomial& o) const {
    LambdaMonomial r;
    std::size_t a = 0, b = 0;
    while (a < f_.size() || b < o.f_.size()) {
      if (b == o.f_.size() || (a < f_.size() && f_[a].first < o.f_[b].first)) {
        r.f_.push_back(f_[a++]);
      } else if (a == f_.size() || o.f_[b].first < f_[a].first) {
        r.f_.push_back(o.f_[b++]);
      } else {
        r.f_.emplace_back(f_[a].first, f_[a].second + o.f_[b].second);
        ++a;
        ++b;
      }
    }
    return r;
  }

  friend bool operator==(const LambdaMonomial&, const LambdaMonomial&) = default;
  friend auto operator<=>(const LambdaMonomial& a, const LambdaMonomial& b) { return a.f_ <=> b.f_; }

  std::string to_string() const {
    std::string s;
    for (auto [k, e] : f_) {
      if (!s.empty()) s += "*";
      s += "l" + std::to_string(k);
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }

 private:
  std::vector<std::pair<int, int>> f_;
};

class WeightedPoly;
enum class PolyOp { add, sub, mul };
WeightedPoly poly_arith(const WeightedPoly& a, const WeightedPoly& b, PolyOp op);

// Polynomial in the λ_k over the rationals; λ_k has weight k.
class WeightedPoly {
 public:
  using TermMap = std::map<LambdaMonomial, Rational>;

  WeightedPoly() = default;
  WeightedPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) t_.emplace(LambdaMonomial{}, c);
  }
  WeightedPoly(long c) : WeightedPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  WeightedPoly(int c) : WeightedPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static WeightedPoly lambda(int k) { return term(LambdaMonomial::var(k), Rational(1)); }
  static WeightedPoly term(const LambdaMonomial& m, const Rational& c) {
    WeightedPoly p;
    if (!c.is_zero()) p.t_.emplace(m, c);
    return p;
  }

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
  Rational constant_term() const {
    auto it = t_.find(LambdaMonomial{});
    return it == t_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const LambdaMonomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }

  // Common weight of all terms; empty for zero or inhomogeneous polynomials.
  std::optional<int> weight() const {
    if (t_.empty()) return std::nullopt;
    int w = t_.begin()->first.weight();
    for (const auto& [m, c] : t_)
      if (m.weight() != w) return std::nullopt;
    return w;
  }
  bool is_homogeneous_of(int w) const {
    for (const auto& [m, c] : t_)
      if (m.weight() != w) return false;
    return true;
  }

  WeightedPoly operator-() const {
    WeightedPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  WeightedPoly& operator+=(const WeightedPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  WeightedPoly& operator-=(const WeightedPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  WeightedPoly& operator*=(const WeightedPoly& o) { return *this = *this * o; }
  friend WeightedPoly operator+(WeightedPoly a, const WeightedPoly& b) { return a += b; }
  friend WeightedPoly operator-(WeightedPoly a, const WeightedPoly& b) { return a -= b; }
  friend WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.constant_term());
    if (b.is_constant()) return a.scaled(b.constant_term());
    WeightedPoly r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend bool operator==(const WeightedPoly&, const WeightedPoly&) = default;

  WeightedPoly scaled(const Rational& c) const {
    if (c.is_zero()) return {};
    WeightedPoly r = *this;
    for (auto& [m, v] : r.t_) v *= c;
    return r;
  }
  void add_term(const LambdaMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  // Replaces λ_k by the given polynomials; λ's absent from the map stay symbolic.
  WeightedPoly substitute(const std::map<int, WeightedPoly>& values) const {
    WeightedPoly r;
    for (const auto& [m, c] : t_) {
      WeightedPoly term_value = Rational(c);
      for (auto [k, e] : m.factors()) {
        auto it = values.find(k);
        WeightedPoly base = it == values.end() ? lambda(k) : it->second;
        for (int i = 0; i < e; ++i) term_value = term_value * base;
      }
      r += term_value;
    }
    return r;
  }

  template <class Lookup>
  std::complex<double> evaluate(Lookup&& lambda_value) const {
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : t_) {
      std::complex<double> v = c.to_double();
      for (auto [k, e] : m.factors()) v *= std::pow(std::complex<double>(lambda_value(k)), e);
      acc += v;
    }
    return acc;
  }

  // Deterministic text such as "1/3*l2 - l1^2/9"; ordering by monomial.
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
      Rational a = c.sign() < 0 ? -c : c;
      os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
      first = false;
      if (m.is_one()) {
        os << a.to_string();
      } else {
        if (!a.is_one()) os << a.to_string() << "*";
        os << m.to_string();
      }
    }
    return os.str();
  }

  std::string to_latex() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
      Rational a = c.sign() < 0 ? -c : c;
      os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
      first = false;
      bool unit = a.is_one() && !m.is_one();
      if (!unit) {
        if (a.is_integer()) os << a.numerator();
        else os << "\\tfrac{" << a.numerator() << "}{" << a.denominator() << "}";
      }
      for (auto [k, e] : m.factors()) {
        os << "\\lambda_{" << k << "}";
        if (e != 1) os << "^{" << e << "}";
      }
    }
    return os.str();
  }

 private:
  TermMap t_;
};

inline WeightedPoly poly_arith(const WeightedPoly& a, const WeightedPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  return {};
}

}  // namespace jip
