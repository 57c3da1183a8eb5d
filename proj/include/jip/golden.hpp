#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "jip/sigma_calculus.hpp"

namespace jip::golden {

// Frozen reference forms, hand-transcribed. Expression syntax:
//   x, y, t (local parameter), l<k> (λ_k), P[i,j,..] (℘), Z[i] (ζ), rationals, + - * / ^ ( ).
//   Integer slots (exponents, indices) accept integer expressions in m and w.
// Theorem entries are templates over m: R_ℓ = leading_ℓ − Σ_w coefficient_ℓ(w)·M_{−w}, where each basis row
// (a, b, j, c, d) lists M_{−(a·i−b)} = y^j x^{c·m+d−i} for i = 1 … c·m+d.
inline constexpr const char* kResource = R"json(
{
  "families": [
    {
      "id": "ex34", "n": 3, "s": 4, "terms": "standard",
      "functions": [
        "x^2 - y*P[1,1] - x*P[1,2] - P[1,5]",
        "2*y*x - y*(P[1,2] - P[1,1,1]) - x*(P[2,2] - P[1,1,2]) - (P[2,5] - P[1,1,5])"
      ],
      "dr": ["x^2", "2*y*x"],
      "zeta": ["-Z[1]", "-(Z[2] + P[1,1])"]
    },
    {
      "id": "ex34rem", "n": 3, "s": 4, "terms": "extended",
      "functions": [
        "x^2 - y*P[1,1] - x*P[1,2] - P[1,5]",
        "2*y*x - l1*x^2 - y*(P[1,2] - P[1,1,1]) - x*(P[2,2] - P[1,1,2]) - (P[2,5] - P[1,1,5])"
      ],
      "dr": ["x^2", "2*y*x - l1*x^2"]
    },
    {
      "id": "ex37", "n": 3, "s": 7, "terms": "standard",
      "functions": [
        "x^4 - y*x*P[1,1] - x^3*P[1,2] - y*P[1,4] - x^2*P[1,5] - x*P[1,8] - P[1,11]",
        "2*y*x^2 - y*x*(P[1,2] - P[1,1,1]) - x^3*(P[2,2] - P[1,1,2]) - y*(P[2,4] - P[1,1,4]) - x^2*(P[2,5] - P[1,1,5]) - x*(P[2,8] - P[1,1,8]) - (P[2,11] - P[1,1,11])"
      ],
      "dr": ["x^4", "2*y*x^2"]
    },
    {
      "id": "ex35", "n": 3, "s": 5, "terms": "standard",
      "functions": [
        "y*x - P[1,1]*x^2 - P[1,2]*y - P[1,4]*x - P[1,7]",
        "2*x^3 + l1*y*x - (P[1,2] - P[1,1,1])*x^2 - (P[2,2] - P[1,1,2])*y - (P[2,4] - P[1,1,4])*x - (P[2,7] - P[1,1,7])"
      ],
      "dr": ["y*x", "2*x^3 + l1*y*x"]
    },
    {
      "id": "ex25", "n": 2, "s": 5, "terms": "standard",
      "functions": [
        "x^2 - x*P[1,1] - P[1,3]",
        "2*y + x*P[1,1,1] + P[1,1,3]"
      ]
    }
  ],
  "theorems": [
    {
      "id": "T33m1", "n": 3, "r": 1, "ms": [1, 2],
      "leading": ["x^(2*m)", "2*y*x^m"],
      "coefficient": ["P[1,w]", "P[2,w] - P[1,1,w]"],
      "basis": [[3, 2, 1, 1, 0], [3, 1, 0, 2, 0]],
      "dr": ["x^(2*m)", "2*y*x^m"],
      "zeta": ["-Z[1]", "-(Z[2] + P[1,1])"],
      "puiseux": "1 + l2/3*t^2 + l5/3*t^5", "through": 6
    },
    {
      "id": "T33m2", "n": 3, "r": 2, "ms": [1, 2],
      "leading": ["y*x^m", "2*x^(2*m+1) + l1*y*x^m"],
      "coefficient": ["P[1,w]", "P[2,w] - P[1,1,w]"],
      "basis": [[3, 1, 1, 1, 0], [3, 2, 0, 2, 1]],
      "dr": ["y*x^m", "2*x^(2*m+1) + l1*y*x^m"],
      "zeta": ["-Z[1]", "-(Z[2] + P[1,1])"],
      "puiseux": "1 + l1/3*t - l1^3/81*t^3", "through": 4
    },
    {
      "id": "T44m1", "n": 4, "r": 1, "ms": [1],
      "leading": ["x^(3*m)", "2*y*x^(2*m)", "3*y^2*x^m - l2*x^(3*m)"],
      "coefficient": ["P[1,w]", "P[2,w] - P[1,1,w]", "P[3,w] - 3/2*P[1,2,w] + 1/2*P[1,1,1,w]"],
      "basis": [[4, 3, 2, 1, 0], [4, 2, 1, 2, 0], [4, 1, 0, 3, 0]],
      "dr": ["x^(3*m)", "2*y*x^(2*m)", "3*y^2*x^m - l2*x^(3*m)"],
      "zeta": ["-Z[1]", "-(Z[2] + P[1,1])", "-(Z[3] + 3/2*P[1,2] - 1/2*P[1,1,1])"],
      "puiseux": "1 + l2/4*t^2 + l3/4*t^3 + l2^2/32*t^4", "through": 6
    },
    {
      "id": "T44m3", "n": 4, "r": 3, "ms": [1],
      "leading": ["y^2*x^m", "2*y*x^(2*m+1) + l1*y^2*x^m", "3*x^(3*m+2) + 2*l1*y*x^(2*m+1) + l2*y^2*x^m"],
      "coefficient": ["P[1,w]", "P[2,w] - P[1,1,w]", "P[3,w] - 3/2*P[1,2,w] + 1/2*l1*P[1,1,w] + 1/2*P[1,1,1,w]"],
      "basis": [[4, 1, 2, 1, 0], [4, 2, 1, 2, 1], [4, 3, 0, 3, 2]],
      "dr": ["y^2*x^m", "2*y*x^(2*m+1) + l1*y^2*x^m", "3*x^(3*m+2) + 2*l1*y*x^(2*m+1) + l2*y^2*x^m"],
      "zeta": ["-Z[1]", "-(Z[2] + P[1,1])", "-(Z[3] + 3/2*P[1,2] - 1/2*l1*P[1,1] - 1/2*P[1,1,1])"],
      "puiseux": "1 + l1/4*t + (l2/4 - l1^2/32)*t^2", "through": 4
    },
    {
      "id": "T55m1", "n": 5, "r": 1, "ms": [1],
      "leading": ["x^(4*m)", "2*y*x^(3*m)", "3*y^2*x^(2*m) - l2*x^(4*m)", "4*y^3*x^m - 2*l2*y*x^(3*m) - l3*x^(4*m)"],
      "coefficient": [
        "P[1,w]", "P[2,w] - P[1,1,w]", "P[3,w] - 3/2*P[1,2,w] + 1/2*P[1,1,1,w]",
        "P[4,w] - 1/2*P[2,2,w] - 4/3*P[1,3,w] - 1/3*l2*P[1,1,w] + P[1,1,2,w] - 1/6*P[1,1,1,1,w]"
      ],
      "basis": [[5, 4, 3, 1, 0], [5, 3, 2, 2, 0], [5, 2, 1, 3, 0], [5, 1, 0, 4, 0]],
      "dr": ["x^(4*m)", "2*y*x^(3*m)", "3*y^2*x^(2*m) - l2*x^(4*m)", "4*y^3*x^m - 2*l2*y*x^(3*m) - l3*x^(4*m)"],
      "zeta": [
        "-Z[1]", "-(Z[2] + P[1,1])", "-(Z[3] + 3/2*P[1,2] - 1/2*P[1,1,1])",
        "-(Z[4] + 1/2*P[2,2] + 4/3*P[1,3] + 1/3*l2*P[1,1] - P[1,1,2] + 1/6*P[1,1,1,1])"
      ],
      "puiseux": "1 + l2/5*t^2 + l3/5*t^3 + (l4/5 + l2^2/25)*t^4", "through": 5
    },
    {
      "id": "T55m2", "n": 5, "r": 2, "ms": [1],
      "leading": ["y^2*x^(2*m)", "2*x^(4*m+1) + l1*y^2*x^(2*m)", "3*y^3*x^m - l1*x^(4*m+1)", "4*y*x^(3*m+1) + 2*l1*y^3*x^m + 2*l3*y^2*x^(2*m)"],
      "coefficient": [
        "P[1,w]", "P[2,w] - P[1,1,w]", "P[3,w] - 3/2*P[1,2,w] + 1/2*l1*P[1,1,w] + 1/2*P[1,1,1,w]",
        "P[4,w] - 1/2*P[2,2,w] - 4/3*P[1,3,w] - 2/3*l1*P[1,2,w] + 1/6*l1^2*P[1,1,w] + P[1,1,2,w] - 1/6*P[1,1,1,1,w]"
      ],
      "basis": [[5, 3, 3, 1, 0], [5, 1, 2, 2, 0], [5, 4, 1, 3, 1], [5, 2, 0, 4, 1]],
      "dr": ["y^2*x^(2*m)", "2*x^(4*m+1) + l1*y^2*x^(2*m)", "3*y^3*x^m - l1*x^(4*m+1)", "4*y*x^(3*m+1) + 2*l1*y^3*x^m + 2*l3*y^2*x^(2*m)"],
      "zeta": [
        "-Z[1]", "-(Z[2] + P[1,1])", "-(Z[3] + 3/2*P[1,2] - 1/2*l1*P[1,1] - 1/2*P[1,1,1])",
        "-(Z[4] + 1/2*P[2,2] + 4/3*P[1,3] + 2/3*l1*P[1,2] - 1/6*l1^2*P[1,1] - P[1,1,2] + 1/6*P[1,1,1,1])"
      ],
      "puiseux": "1 + l1/5*t + (l3/5 - l1^3/125)*t^3 + (l4/5 - l1*l3/25 + l1^4/625)*t^4", "through": 5
    },
    {
      "id": "T55m3", "n": 5, "r": 3, "ms": [1],
      "leading": ["y*x^(3*m+1)", "2*y^3*x^m - l1*y*x^(3*m+1)", "3*x^(4*m+2) + l1*y^3*x^m + 2*l2*y*x^(3*m+1)", "4*y^2*x^(2*m+1) - 2*l1*x^(4*m+2) + 2*l2*y^3*x^m - l1*l2*y*x^(3*m+1)"],
      "coefficient": [
        "P[1,w]", "P[2,w] - P[1,1,w]", "P[3,w] - 3/2*P[1,2,w] - 1/2*l1*P[1,1,w] + 1/2*P[1,1,1,w]",
        "P[4,w] - 1/2*P[2,2,w] - 4/3*P[1,3,w] + 2/3*l1*P[1,2,w] - 1/3*(l2 - 1/2*l1^2)*P[1,1,w] + P[1,1,2,w] - 1/6*P[1,1,1,1,w]"
      ],
      "basis": [[5, 2, 3, 1, 0], [5, 4, 2, 2, 1], [5, 1, 1, 3, 1], [5, 3, 0, 4, 2]],
      "dr": ["y*x^(3*m+1)", "2*y^3*x^m - l1*y*x^(3*m+1)", "3*x^(4*m+2) + l1*y^3*x^m + 2*l2*y*x^(3*m+1)", "4*y^2*x^(2*m+1) - 2*l1*x^(4*m+2) + 2*l2*y^3*x^m - l1*l2*y*x^(3*m+1)"],
      "zeta": [
        "-Z[1]", "-(Z[2] + P[1,1])", "-(Z[3] + 3/2*P[1,2] + 1/2*l1*P[1,1] - 1/2*P[1,1,1])",
        "-(Z[4] + 1/2*P[2,2] + 4/3*P[1,3] - 2/3*l1*P[1,2] + 1/3*(l2 - 1/2*l1^2)*P[1,1] - P[1,1,2] + 1/6*P[1,1,1,1])"
      ],
      "puiseux": "1 + l1/5*t + (l2/5 + l1^2/25)*t^2 + (l4/5 - l2^2/25 - 3/125*l1^2*l2 - 2/625*l1^4)*t^4", "through": 5
    },
    {
      "id": "T55m4", "n": 5, "r": 4, "ms": [1],
      "leading": ["y^3*x^m", "2*y^2*x^(2*m+1) + l1*y^3*x^m", "3*y*x^(3*m+2) + 2*l1*y^2*x^(2*m+1) + l2*y^3*x^m", "4*x^(4*m+3) + 3*l1*y*x^(3*m+2) + 2*l2*y^2*x^(2*m+1) + l3*y^3*x^m"],
      "coefficient": [
        "P[1,w]", "P[2,w] - P[1,1,w]", "P[3,w] - 3/2*P[1,2,w] + 1/2*l1*P[1,1,w] + 1/2*P[1,1,1,w]",
        "P[4,w] - 1/2*P[2,2,w] - 4/3*P[1,3,w] + 5/6*l1*P[1,2,w] + 1/3*(l2 - l1^2)*P[1,1,w] + P[1,1,2,w] - 1/2*l1*P[1,1,1,w] - 1/6*P[1,1,1,1,w]"
      ],
      "basis": [[5, 1, 3, 1, 0], [5, 2, 2, 2, 1], [5, 3, 1, 3, 2], [5, 4, 0, 4, 3]],
      "dr": ["y^3*x^m", "2*y^2*x^(2*m+1) + l1*y^3*x^m", "3*y*x^(3*m+2) + 2*l1*y^2*x^(2*m+1) + l2*y^3*x^m", "4*x^(4*m+3) + 3*l1*y*x^(3*m+2) + 2*l2*y^2*x^(2*m+1) + l3*y^3*x^m"],
      "zeta": [
        "-Z[1]", "-(Z[2] + P[1,1])", "-(Z[3] + 3/2*P[1,2] - 1/2*l1*P[1,1] - 1/2*P[1,1,1])",
        "-(Z[4] + 1/2*P[2,2] + 4/3*P[1,3] - 5/6*l1*P[1,2] - 1/3*(l2 - l1^2)*P[1,1] - P[1,1,2] + 1/2*l1*P[1,1,1] + 1/6*P[1,1,1,1])"
      ],
      "puiseux": "1 + l1/5*t + (l2/5 - l1^2/25)*t^2 + (l3/5 - l2*l1/25 + l1^3/125)*t^3", "through": 5
    },
    {
      "id": "HYP", "n": 2, "r": 1, "ms": [2, 3, 4],
      "leading": ["x^m", "2*y"],
      "coefficient": ["P[1,w]", "-P[1,1,w]"],
      "basis": [[2, 1, 0, 1, 0]],
      "dr": ["x^m", "2*y"]
    }
  ]
}
)json";

// Polynomial in x, y, t with λ-coefficients, optionally times one ζ/℘ symbol.
struct Key {
  int j = 0;
  int i = 0;
  int t = 0;
  std::vector<int> sym;  // empty: no symbol; one entry: ζ; more: ℘
  friend auto operator<=>(const Key& a, const Key& b) {
    return std::tie(a.j, a.i, a.t, a.sym) <=> std::tie(b.j, b.i, b.t, b.sym);
  }
  friend bool operator==(const Key&, const Key&) = default;
};

class Expr {
 public:
  Expr() = default;
  static Expr constant(const WeightedPoly& c) { return single({}, c); }
  static Expr single(const Key& k, const WeightedPoly& c) {
    Expr e;
    e.add(k, c);
    return e;
  }

  const std::map<Key, WeightedPoly>& terms() const { return t_; }
  void add(const Key& k, const WeightedPoly& c) {
    if (c.is_zero()) return;
    auto [it, ins] = t_.emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  friend Expr operator+(Expr a, const Expr& b) {
    for (const auto& [k, c] : b.t_) a.add(k, c);
    return a;
  }
  friend Expr operator-(const Expr& a) {
    Expr r;
    for (const auto& [k, c] : a.t_) r.add(k, -c);
    return r;
  }
  friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
  friend Expr operator*(const Expr& a, const Expr& b) {
    Expr r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) {
        if (!ka.sym.empty() && !kb.sym.empty()) throw Error(ErrorKind::ParseError, "product of two abelian symbols");
        Key k{ka.j + kb.j, ka.i + kb.i, ka.t + kb.t, ka.sym.empty() ? kb.sym : ka.sym};
        r.add(k, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Expr&, const Expr&) = default;

  std::optional<WeightedPoly> as_constant() const {
    if (t_.empty()) return WeightedPoly{};
    if (t_.size() == 1 && t_.begin()->first == Key{}) return t_.begin()->second;
    return std::nullopt;
  }

  // Canonical text: descending (j, i), then t, then symbol order.
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [k, c] = *it;
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      if (k.j) out += "*y" + (k.j > 1 ? "^" + std::to_string(k.j) : std::string());
      if (k.i) out += "*x" + (k.i > 1 ? "^" + std::to_string(k.i) : std::string());
      if (k.t) out += "*t^" + std::to_string(k.t);
      if (!k.sym.empty()) out += "*" + AbelianSymbol{k.sym}.to_string();
    }
    return out;
  }

 private:
  std::map<Key, WeightedPoly> t_;
};

class Parser {
 public:
  Parser(std::string src, int m, int w = 0) : s_(std::move(src)), m_(m), w_(w) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (p_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(p_) + " in '" + s_ + "'");
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  long digits() {
    skip();
    if (p_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[p_]))) fail("expected digits");
    long v = 0;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) v = v * 10 + (s_[p_++] - '0');
    return v;
  }

  long int_atom() {
    skip();
    if (eat('(')) {
      long v = int_expr();
      expect(')');
      return v;
    }
    if (eat('m')) return m_;
    if (eat('w')) return w_;
    return digits();
  }
  long int_term() {
    long v = int_atom();
    while (eat('*')) v *= int_atom();
    return v;
  }
  long int_expr() {
    long v = eat('-') ? -int_term() : int_term();
    for (;;) {
      if (eat('+')) v += int_term();
      else if (eat('-')) v -= int_term();
      else return v;
    }
  }

  Expr expr() {
    Expr e = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+')) e = e + term();
      else if (eat('-')) e = e - term();
      else return e;
    }
  }
  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*')) {
        e = e * factor();
      } else if (eat('/')) {
        auto d = factor().as_constant();
        if (!d || !d->is_constant() || d->is_zero()) fail("division by a non-constant");
        e = Expr::constant(WeightedPoly(Rational(1) / d->constant_term())) * e;
      } else {
        return e;
      }
    }
  }
  Expr factor() {
    Expr base = atom();
    if (!eat('^')) return base;
    long k = int_atom();
    if (k < 0) fail("negative exponent");
    Expr r = Expr::constant(WeightedPoly(1));
    for (long q = 0; q < k; ++q) r = r * base;
    return r;
  }
  std::vector<int> index_list() {
    std::vector<int> idx;
    expect('[');
    do idx.push_back(static_cast<int>(int_expr()));
    while (eat(','));
    expect(']');
    return idx;
  }
  Expr atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    char c = s_[p_];
    if (eat('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr::constant(WeightedPoly(Rational(digits())));
    ++p_;
    switch (c) {
      case 'x': return Expr::single({0, 1, 0, {}}, WeightedPoly(1));
      case 'y': return Expr::single({1, 0, 0, {}}, WeightedPoly(1));
      case 't': return Expr::single({0, 0, 1, {}}, WeightedPoly(1));
      case 'l': return Expr::constant(WeightedPoly::lambda(static_cast<int>(digits())));
      case 'P': {
        auto idx = index_list();
        if (idx.size() < 2) fail("wp needs two or more indices");
        return Expr::single({0, 0, 0, AbelianSymbol::wp(idx).indices}, WeightedPoly(1));
      }
      case 'Z': {
        auto idx = index_list();
        if (idx.size() != 1) fail("zeta takes one index");
        return Expr::single({0, 0, 0, idx}, WeightedPoly(1));
      }
      default: --p_; fail(std::string("unexpected '") + c + "'");
    }
  }

  std::string s_;
  std::size_t p_ = 0;
  int m_;
  int w_;
};

inline Expr parse(const std::string& src, int m = 0, int w = 0) { return Parser(src, m, w).parse(); }

inline Expr from_abelian(const AbelianExpr& a, int j = 0, int i = 0) {
  Expr e;
  e.add({j, i, 0, {}}, a.constant());
  for (const auto& [s, c] : a.terms()) e.add({j, i, 0, s.indices}, c);
  return e;
}
inline Expr from_rfunction(const RFunction& rf) {
  Expr e;
  for (const auto& [w, t] : rf.terms) e = e + from_abelian(t.second, t.first.j, t.first.i);
  return e;
}
inline Expr from_entire(const EntireRationalFn& fn) {
  Expr e;
  for (const auto& [w, t] : fn.terms) e.add({t.first.j, t.first.i, 0, {}}, t.second);
  return e;
}
inline Expr from_series(const LaurentSeries& s, int through) {
  Expr e;
  for (int k = s.lowest_exponent(); k < through; ++k) e.add({0, 0, k, {}}, s.coefficient(k));
  return e;
}

struct BasisRow {
  int a, b, j, c, d;
};

// One concrete (n, s) instance with its frozen reference data.
struct Case {
  std::string id;
  int n = 0;
  int s = 0;
  int m = 0;
  TermSet set = TermSet::standard;
  std::vector<Expr> functions;
  std::vector<Expr> dr;
  std::vector<Expr> zeta;
  std::optional<Expr> puiseux;
  int through = 0;
  std::map<int, std::pair<int, int>> basis;  // gap → (j, i) as stated
};

inline std::vector<Case> cases() {
  auto doc = nlohmann::json::parse(kResource);
  std::vector<Case> out;
  auto exprs = [](const nlohmann::json& arr, int m) {
    std::vector<Expr> v;
    for (const auto& s : arr) v.push_back(parse(s.get<std::string>(), m));
    return v;
  };
  for (const auto& f : doc["families"]) {
    Case c;
    c.id = f["id"];
    c.n = f["n"];
    c.s = f["s"];
    c.m = c.s / c.n;
    c.set = f["terms"] == "extended" ? TermSet::extended : TermSet::standard;
    c.functions = exprs(f["functions"], c.m);
    if (f.contains("dr")) c.dr = exprs(f["dr"], c.m);
    if (f.contains("zeta")) c.zeta = exprs(f["zeta"], c.m);
    out.push_back(std::move(c));
  }
  for (const auto& t : doc["theorems"]) {
    for (int m : t["ms"].get<std::vector<int>>()) {
      Case c;
      c.n = t["n"];
      c.m = m;
      c.s = c.n * m + t["r"].get<int>();
      c.id = t["id"].get<std::string>() + "_m" + std::to_string(m);
      for (const auto& row : t["basis"]) {
        BasisRow b{row[0], row[1], row[2], row[3], row[4]};
        int count = b.c * m + b.d;
        for (int i = 1; i <= count; ++i) c.basis[b.a * i - b.b] = {b.j, count - i};
      }
      const auto& lead = t["leading"];
      const auto& coef = t["coefficient"];
      for (std::size_t l = 0; l < lead.size(); ++l) {
        Expr e = parse(lead[l].get<std::string>(), m);
        for (const auto& [w, ji] : c.basis) {
          Expr M = Expr::single({ji.first, ji.second, 0, {}}, WeightedPoly(1));
          e = e - parse(coef[l].get<std::string>(), m, w) * M;
        }
        c.functions.push_back(e);
      }
      if (t.contains("dr")) c.dr = exprs(t["dr"], m);
      if (t.contains("zeta")) c.zeta = exprs(t["zeta"], m);
      if (t.contains("puiseux")) {
        c.puiseux = parse(t["puiseux"].get<std::string>(), m);
        c.through = t["through"];
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

struct Check {
  std::string case_id;
  std::string item;
  bool pass = false;
  std::string expected;
  std::string actual;
};

inline Check compare(const std::string& id, const std::string& item, const Expr& want, const Expr& got) {
  return {id, item, want == got, want.to_string(), got.to_string()};
}

// Every comparison for one case: R-functions, gap basis, rcond columns, dr̃ numerators, ζ-relations, Puiseux h.
inline std::vector<Check> run_case(const Case& c) {
  std::vector<Check> out;
  CurveFamily fam = make_family(c.n, c.s, {}, c.set);
  auto ch = expand_at_infinity(fam);
  auto fb = first_kind_basis(ch);
  auto sb = associated_second_kind(ch, fb);
  auto sys = build_inversion_system(fam);

  for (std::size_t l = 0; l < c.functions.size(); ++l) {
    std::string item = "R_" + std::to_string(2 * fam.genus() + static_cast<int>(l));
    if (l >= sys.r_functions.size()) {
      out.push_back({c.id, item, false, c.functions[l].to_string(), "missing"});
      continue;
    }
    out.push_back(compare(c.id, item, c.functions[l], from_rfunction(sys.r_functions[l])));
  }
  if (!c.basis.empty()) {
    Expr want, got;
    for (const auto& [w, ji] : c.basis) want.add({ji.first, ji.second, w, {}}, WeightedPoly(1));
    for (int w : fam.gaps()) {
      Monomial mo = monomial_with_label(fam, -w);
      got.add({mo.j, mo.i, w, {}}, WeightedPoly(1));
    }
    out.push_back(compare(c.id, "first-kind numerators", want, got));
  }
  {
    auto M = check_rcond(fb, sb);
    bool ok = rcond_is_identity(M, fam.gaps());
    out.push_back({c.id, "rcond", ok, "identity columns", ok ? "identity columns" : "mismatch"});
  }
  for (std::size_t l = 0; l < c.dr.size(); ++l) {
    std::string item = "dr_" + std::to_string(l + 1);
    if (l >= sb.numerators.size()) out.push_back({c.id, item, false, c.dr[l].to_string(), "missing"});
    else out.push_back(compare(c.id, item, c.dr[l], from_entire(sb.numerators[l])));
  }
  for (std::size_t l = 0; l < c.zeta.size(); ++l) {
    std::string item = "zeta R_" + std::to_string(l + 1);
    if (l >= sys.zeta_relations.size()) out.push_back({c.id, item, false, c.zeta[l].to_string(), "missing"});
    else out.push_back(compare(c.id, item, c.zeta[l], from_abelian(sys.zeta_relations[l])));
  }
  if (c.puiseux) out.push_back(compare(c.id, "puiseux", *c.puiseux, from_series(ch.h, c.through)));
  return out;
}

inline std::vector<Check> run_all() {
  std::vector<Check> out;
  for (const auto& c : cases()) {
    auto r = run_case(c);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

// Cases whose curve is (n, s) with the given term set.
inline std::vector<Case> cases_for(int n, int s, TermSet set = TermSet::standard) {
  std::vector<Case> out;
  for (auto& c : cases())
    if (c.n == n && c.s == s && c.set == set) out.push_back(std::move(c));
  return out;
}

}  // namespace jip::golden
