#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jip/poly_roots.hpp"
#include "jip/weighted_poly.hpp"

namespace jip {

// standard: 0 ≤ j ≤ n−2, 0 ≤ i ≤ s−2.  extended: 0 ≤ j ≤ n−1, 0 ≤ i ≤ s−1 (all terms of lower weight).
enum class TermSet { standard, extended };

struct CurveTerm {
  int j = 0;  // power of y
  int i = 0;  // power of x
  int k = 0;  // λ index, ns − js − in
};

struct Monomial {
  int j = 0;
  int i = 0;
  int weight = 0;
  int label = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct CurvePoint {
  cplx x;
  cplx y;
};

// Value assigned to λ_k when building a family.
struct LambdaValue {
  bool symbolic = true;
  Rational value;
  static LambdaValue sym() { return {}; }
  static LambdaValue num(const Rational& v) { return {false, v}; }
};

class CurveFamily {
 public:
  int n() const { return n_; }
  int s() const { return s_; }
  int m() const { return s_ / n_; }
  int genus() const { return g_; }
  TermSet term_set() const { return set_; }
  const std::vector<int>& gaps() const { return gaps_; }
  const std::vector<CurveTerm>& terms() const { return terms_; }
  const std::map<int, WeightedPoly>& lambda() const { return lambda_; }
  WeightedPoly lambda(int k) const {
    auto it = lambda_.find(k);
    return it == lambda_.end() ? WeightedPoly{} : it->second;
  }
  bool is_numeric() const {
    for (const auto& [k, v] : lambda_)
      if (!v.is_constant()) return false;
    return true;
  }
  double lambda_numeric(int k) const {
    WeightedPoly v = lambda(k);
    if (!v.is_constant()) throw Error(ErrorKind::SymbolicLambda, "lambda_" + std::to_string(k) + " is symbolic");
    return v.constant_term().to_double();
  }
  bool is_gap(int w) const { return std::binary_search(gaps_.begin(), gaps_.end(), w); }
  int gap_index(int w) const {
    auto it = std::lower_bound(gaps_.begin(), gaps_.end(), w);
    if (it == gaps_.end() || *it != w) throw Error(ErrorKind::InvalidInput, std::to_string(w) + " is not a gap");
    return static_cast<int>(it - gaps_.begin());
  }
  // Number of functions in the inversion system: n−1, but two for hyperelliptic curves.
  int system_size() const { return std::max(n_ - 1, 2); }
  bool is_hyperelliptic() const { return n_ == 2; }

  std::string name() const {
    return "(" + std::to_string(n_) + "," + std::to_string(s_) + ")" + (set_ == TermSet::extended ? "ext" : "");
  }

  // Coefficient of y^j x^i in f (including −y^n and x^s) for numeric families.
  const std::vector<std::vector<double>>& numeric_table() const {
    if (!numeric_) throw Error(ErrorKind::SymbolicLambda, "family has symbolic parameters");
    return *numeric_;
  }

  friend CurveFamily make_family(int n, int s, const std::map<int, LambdaValue>& values, TermSet set,
                                 bool unspecified_symbolic);

 private:
  int n_ = 0, s_ = 0, g_ = 0;
  TermSet set_ = TermSet::standard;
  std::vector<int> gaps_;
  std::vector<CurveTerm> terms_;
  std::map<int, WeightedPoly> lambda_;
  std::optional<std::vector<std::vector<double>>> numeric_;
};

inline std::vector<CurveTerm> admissible_terms(int n, int s, TermSet set) {
  std::vector<CurveTerm> out;
  int jmax = set == TermSet::standard ? n - 2 : n - 1;
  int imax = set == TermSet::standard ? s - 2 : s - 1;
  for (int j = 0; j <= jmax; ++j)
    for (int i = 0; i <= imax; ++i) {
      int k = n * s - j * s - i * n;
      if (k > 0) out.push_back({j, i, k});
    }
  std::sort(out.begin(), out.end(), [](const CurveTerm& a, const CurveTerm& b) { return a.k < b.k; });
  return out;
}

inline std::vector<int> gap_sequence(int n, int s) {
  int g = (n - 1) * (s - 1) / 2;
  int bound = 2 * g + 1;
  std::vector<bool> in_semigroup(static_cast<std::size_t>(bound), false);
  for (int j = 0; j * s < bound; ++j)
    for (int i = 0; j * s + i * n < bound; ++i) in_semigroup[static_cast<std::size_t>(j * s + i * n)] = true;
  std::vector<int> gaps;
  for (int w = 1; w < bound; ++w)
    if (!in_semigroup[static_cast<std::size_t>(w)]) gaps.push_back(w);
  return gaps;
}

// Families with unspecified λ either symbolic (default) or zero.
inline CurveFamily make_family(int n, int s, const std::map<int, LambdaValue>& values = {},
                               TermSet set = TermSet::standard, bool unspecified_symbolic = true) {
  if (n < 2 || s <= n) throw Error(ErrorKind::InvalidInput, "need 2 <= n < s");
  if (std::gcd(n, s) != 1)
    throw Error(ErrorKind::NotCoprime, "gcd(" + std::to_string(n) + "," + std::to_string(s) + ") != 1");
  CurveFamily f;
  f.n_ = n;
  f.s_ = s;
  f.set_ = set;
  f.g_ = (n - 1) * (s - 1) / 2;
  f.gaps_ = gap_sequence(n, s);
  f.terms_ = admissible_terms(n, s, set);
  for (const auto& [k, v] : values) {
    bool ok = std::any_of(f.terms_.begin(), f.terms_.end(), [k = k](const CurveTerm& t) { return t.k == k; });
    if (!ok) throw Error(ErrorKind::InvalidLambdaIndex, "lambda_" + std::to_string(k) + " not admissible for " + f.name());
  }
  for (const auto& t : f.terms_) {
    auto it = values.find(t.k);
    WeightedPoly v;
    if (it == values.end()) v = unspecified_symbolic ? WeightedPoly::lambda(t.k) : WeightedPoly{};
    else v = it->second.symbolic ? WeightedPoly::lambda(t.k) : WeightedPoly(it->second.value);
    f.lambda_.emplace(t.k, v);
  }
  if (f.is_numeric()) {
    std::vector<std::vector<double>> tab(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(s + 1), 0.0));
    tab[static_cast<std::size_t>(n)][0] = -1.0;
    tab[0][static_cast<std::size_t>(s)] += 1.0;
    for (const auto& t : f.terms_) tab[static_cast<std::size_t>(t.j)][static_cast<std::size_t>(t.i)] += f.lambda_numeric(t.k);
    f.numeric_ = std::move(tab);
  }
  return f;
}

inline CurveFamily make_numeric_family(int n, int s, const std::map<int, double>& values,
                                       TermSet set = TermSet::standard) {
  std::map<int, LambdaValue> v;
  for (auto [k, x] : values) v[k] = LambdaValue::num(Rational::from_double(x));
  return make_family(n, s, v, set, false);
}

inline Monomial monomial_at(const CurveFamily& fam, int j, int i) {
  int w = j * fam.s() + i * fam.n();
  return {j, i, w, w - 2 * fam.genus() + 1};
}

// The first `count` monomials y^j x^i (j < n) in increasing weight.
inline std::vector<Monomial> monomial_basis(const CurveFamily& fam, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "count must be >= 1");
  std::vector<Monomial> out;
  for (int w = 0; static_cast<int>(out.size()) < count; ++w)
    for (int j = 0; j < fam.n(); ++j) {
      int rest = w - j * fam.s();
      if (rest >= 0 && rest % fam.n() == 0) out.push_back(monomial_at(fam, j, rest / fam.n()));
    }
  return out;
}

// Monomial of given label (weight label + 2g − 1); throws if that weight is a gap.
inline Monomial monomial_with_label(const CurveFamily& fam, int label) {
  int w = label + 2 * fam.genus() - 1;
  for (int j = 0; j < fam.n(); ++j) {
    int rest = w - j * fam.s();
    if (rest >= 0 && rest % fam.n() == 0) return monomial_at(fam, j, rest / fam.n());
  }
  throw Error(ErrorKind::InvalidInput, "no monomial of weight " + std::to_string(w));
}

// Polynomial Σ c·y^j x^i on the curve, keyed by Sató weight (unique for j < n).
struct EntireRationalFn {
  std::map<int, std::pair<Monomial, WeightedPoly>> terms;

  void add(const Monomial& m, const WeightedPoly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m.weight);
    if (it == terms.end()) {
      terms.emplace(m.weight, std::make_pair(m, c));
    } else {
      it->second.second += c;
      if (it->second.second.is_zero()) terms.erase(it);
    }
  }
  int weight() const { return terms.empty() ? -1 : terms.rbegin()->first; }
  WeightedPoly coefficient(int j, int i, int n, int s) const {
    auto it = terms.find(j * s + i * n);
    return it == terms.end() ? WeightedPoly{} : it->second.second;
  }
  friend bool operator==(const EntireRationalFn& a, const EntireRationalFn& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (const auto& [w, t] : a.terms) {
      auto it = b.terms.find(w);
      if (it == b.terms.end() || !(it->second.second == t.second)) return false;
    }
    return true;
  }
  std::string to_string() const {
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& [m, c] = it->second;
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      if (m.j) out += "*y" + (m.j > 1 ? "^" + std::to_string(m.j) : std::string());
      if (m.i) out += "*x" + (m.i > 1 ? "^" + std::to_string(m.i) : std::string());
    }
    return out.empty() ? "0" : out;
  }
};

// Coefficients c_j(x) of f = Σ_j c_j(x) y^j.
inline std::vector<CPoly> y_coefficients(const CurveFamily& fam) {
  const auto& tab = fam.numeric_table();
  std::vector<CPoly> c;
  for (const auto& row : tab) c.emplace_back(row.begin(), row.end());
  return c;
}

inline cplx eval_f(const CurveFamily& fam, cplx x, cplx y) {
  const auto& tab = fam.numeric_table();
  cplx acc = 0.0;
  for (std::size_t j = tab.size(); j-- > 0;) {
    cplx cj = 0.0;
    for (std::size_t i = tab[j].size(); i-- > 0;) cj = cj * x + tab[j][i];
    acc = acc * y + cj;
  }
  return acc;
}

inline cplx eval_dyf(const CurveFamily& fam, cplx x, cplx y) {
  const auto& tab = fam.numeric_table();
  cplx acc = 0.0;
  for (std::size_t j = tab.size(); j-- > 1;) {
    cplx cj = 0.0;
    for (std::size_t i = tab[j].size(); i-- > 0;) cj = cj * x + tab[j][i];
    acc = acc * y + cj * static_cast<double>(j);
  }
  return acc;
}

inline cplx eval_dxf(const CurveFamily& fam, cplx x, cplx y) {
  const auto& tab = fam.numeric_table();
  cplx acc = 0.0;
  for (std::size_t j = tab.size(); j-- > 0;) {
    cplx cj = 0.0;
    for (std::size_t i = tab[j].size(); i-- > 1;) cj = cj * x + tab[j][i] * static_cast<double>(i);
    acc = acc * y + cj;
  }
  return acc;
}

// Scale used for relative point residuals.
inline double f_scale(const CurveFamily& fam, cplx x, cplx y) {
  const auto& tab = fam.numeric_table();
  double sc = 0;
  for (std::size_t j = 0; j < tab.size(); ++j)
    for (std::size_t i = 0; i < tab[j].size(); ++i)
      if (tab[j][i] != 0.0) sc += std::abs(tab[j][i]) * std::pow(std::abs(y), j) * std::pow(std::abs(x), i);
  return std::max(sc, 1.0);
}

inline bool on_curve(const CurveFamily& fam, const CurvePoint& p, double tol = 1e-9) {
  return std::abs(eval_f(fam, p.x, p.y)) <= tol * f_scale(fam, p.x, p.y);
}

inline std::vector<CurvePoint> lift_x_to_points(const CurveFamily& fam, cplx x) {
  auto cs = y_coefficients(fam);
  CPoly p;
  for (const auto& c : cs) p.push_back(poly_eval(c, x));
  auto ys = poly_roots(p, fam.n());
  std::vector<CurvePoint> out;
  for (auto y : ys) {
    CurvePoint pt{x, y};
    if (!on_curve(fam, pt, 1e-9)) throw Error(ErrorKind::RootFindingFailure, "lifted point misses the curve");
    out.push_back(pt);
  }
  return out;
}

// Branch-point separation check via the discriminant Res_y(f, ∂_y f) as a polynomial in x.
struct NondegeneracyReport {
  bool ok = false;
  double min_separation = 0;
  std::vector<cplx> branch_x;
};

inline NondegeneracyReport check_nondegenerate(const CurveFamily& fam, double tol = 1e-6) {
  int n = fam.n();
  auto cs = y_coefficients(fam);
  int deg = (n - 1) * fam.s();
  int N = deg + 1;
  double scale = 1.0;
  for (const auto& t : fam.terms()) {
    double v = std::abs(fam.lambda_numeric(t.k));
    if (v > 0) scale = std::max(scale, std::pow(v, static_cast<double>(n) / t.k));
  }
  auto disc_at = [&](cplx x) {
    CPoly p, dp;
    for (const auto& c : cs) p.push_back(poly_eval(c, x));
    dp = poly_derivative(p);
    int sz = 2 * n - 1;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(sz, sz);
    for (int r = 0; r < n - 1; ++r)
      for (int k = 0; k <= n; ++k) S(r, r + k) = p[static_cast<std::size_t>(n - k)];
    for (int r = 0; r < n; ++r)
      for (int k = 0; k <= n - 1; ++k) S(n - 1 + r, r + k) = dp[static_cast<std::size_t>(n - 1 - k)];
    return S.partialPivLu().determinant();
  };
  const double pi = std::acos(-1.0);
  std::vector<cplx> vals(static_cast<std::size_t>(N));
  for (int m = 0; m < N; ++m) vals[m] = disc_at(scale * std::polar(1.0, 2 * pi * m / N));
  CPoly coef(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    cplx acc = 0.0;
    for (int m = 0; m < N; ++m) acc += vals[m] * std::polar(1.0, -2 * pi * m * k / N);
    coef[k] = acc / static_cast<double>(N) / std::pow(scale, k);
  }
  NondegeneracyReport rep;
  int d = effective_degree(coef, 1e-12);
  if (d < deg) return rep;
  rep.branch_x = poly_roots(coef, d);
  double minsep = 1e300;
  for (std::size_t a = 0; a < rep.branch_x.size(); ++a)
    for (std::size_t b = a + 1; b < rep.branch_x.size(); ++b)
      minsep = std::min(minsep, std::abs(rep.branch_x[a] - rep.branch_x[b]) / scale);
  rep.min_separation = minsep;
  rep.ok = minsep > tol;
  return rep;
}

// Family with λ uniform in [−1,1], redrawn until the branch points separate.
inline CurveFamily random_numeric_family(int n, int s, std::mt19937_64& rng, TermSet set = TermSet::standard) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::map<int, double> v;
    for (const auto& t : admissible_terms(n, s, set)) v[t.k] = U(rng);
    auto fam = make_numeric_family(n, s, v, set);
    if (check_nondegenerate(fam).ok) return fam;
  }
  throw Error(ErrorKind::BranchCollision, "no non-degenerate family drawn");
}

}  // namespace jip
