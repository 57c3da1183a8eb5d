#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "jip/expansions.hpp"

namespace jip {

// ζ_i for one index, ℘_{i…} for two or more; indices sorted ascending.
struct AbelianSymbol {
  std::vector<int> indices;

  static AbelianSymbol zeta(int i) { return {{i}}; }
  static AbelianSymbol wp(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    return {std::move(idx)};
  }
  int rank() const { return static_cast<int>(indices.size()); }
  bool is_zeta() const { return rank() == 1; }
  int weight() const {
    int w = 0;
    for (int i : indices) w += i;
    return w;
  }
  std::string kind() const { return is_zeta() ? "zeta" : "wp" + std::to_string(rank()); }
  AbelianSymbol with(int w) const {
    auto idx = indices;
    idx.push_back(w);
    return wp(idx);
  }

  friend bool operator==(const AbelianSymbol&, const AbelianSymbol&) = default;
  friend auto operator<=>(const AbelianSymbol& a, const AbelianSymbol& b) {
    if (a.indices.size() != b.indices.size()) return a.indices.size() <=> b.indices.size();
    return a.indices <=> b.indices;
  }

  std::string to_string() const {
    std::string s = is_zeta() ? "Z[" : "P[";
    for (std::size_t k = 0; k < indices.size(); ++k) s += (k ? "," : "") + std::to_string(indices[k]);
    return s + "]";
  }
  std::string to_latex() const {
    std::string s = is_zeta() ? "\\zeta_{" : "\\wp_{";
    for (std::size_t k = 0; k < indices.size(); ++k) s += (k ? "," : "") + std::to_string(indices[k]);
    return s + "}(u)";
  }
};

class AbelianExpr {
 public:
  AbelianExpr() = default;
  AbelianExpr(const WeightedPoly& c) : constant_(c) {}  // NOLINT(google-explicit-constructor)
  static AbelianExpr symbol(const AbelianSymbol& s, const WeightedPoly& c = WeightedPoly(1)) {
    AbelianExpr e;
    e.add(s, c);
    return e;
  }

  const std::map<AbelianSymbol, WeightedPoly>& terms() const { return terms_; }
  const WeightedPoly& constant() const { return constant_; }
  bool is_zero() const { return terms_.empty() && constant_.is_zero(); }
  WeightedPoly coefficient(const AbelianSymbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? WeightedPoly{} : it->second;
  }

  void add(const AbelianSymbol& s, const WeightedPoly& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.emplace(s, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  AbelianExpr& operator+=(const AbelianExpr& o) {
    constant_ += o.constant_;
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  AbelianExpr operator-() const { return WeightedPoly(-1) * *this; }
  AbelianExpr& operator-=(const AbelianExpr& o) { return *this += -o; }
  friend AbelianExpr operator+(AbelianExpr a, const AbelianExpr& b) { return a += b; }
  friend AbelianExpr operator-(AbelianExpr a, const AbelianExpr& b) { return a -= b; }
  friend AbelianExpr operator*(const WeightedPoly& k, const AbelianExpr& a) {
    AbelianExpr r;
    if (k.is_zero()) return r;
    r.constant_ = k * a.constant_;
    for (const auto& [s, c] : a.terms_) r.add(s, k * c);
    return r;
  }
  friend bool operator==(const AbelianExpr&, const AbelianExpr&) = default;

  // ∂/∂u_w with ∂ζ_a = −℘_{a,w} and ∂℘_α = ℘_{α,w}; λ-coefficients are constants.
  AbelianExpr derivative(int w) const {
    AbelianExpr r;
    for (const auto& [s, c] : terms_) r.add(s.with(w), s.is_zeta() ? -c : c);
    return r;
  }

  // True when every term has total Sató weight `w` (λ weight plus symbol weight).
  bool is_homogeneous_of(int w) const {
    if (!constant_.is_homogeneous_of(w)) return false;
    for (const auto& [s, c] : terms_)
      if (!c.is_homogeneous_of(w - s.weight())) return false;
    return true;
  }

  std::string to_string() const {
    std::string out;
    auto piece = [&](const WeightedPoly& c, const std::string& sym) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")" + (sym.empty() ? "" : "*" + sym);
    };
    if (!constant_.is_zero()) piece(constant_, "");
    for (const auto& [s, c] : terms_) piece(c, s.to_string());
    return out.empty() ? "0" : out;
  }

  std::string to_latex() const {
    std::string out;
    auto piece = [&](const WeightedPoly& c, const std::string& sym) {
      std::string cs = c.to_latex();
      bool single = c.terms().size() == 1;
      bool neg = single && c.terms().begin()->second.sign() < 0;
      std::string body;
      if (single) {
        std::string mag = neg ? cs.substr(1) : cs;
        if (!sym.empty() && mag == "1") mag.clear();
        body = mag + sym;
      } else {
        body = "\\left(" + cs + "\\right)" + sym;
      }
      if (out.empty()) out = (neg ? "-" : "") + body;
      else out += (neg ? " - " : " + ") + body;
    };
    if (!constant_.is_zero()) piece(constant_, "");
    for (const auto& [s, c] : terms_) piece(c, s.to_latex());
    return out.empty() ? "0" : out;
  }

 private:
  std::map<AbelianSymbol, WeightedPoly> terms_;
  WeightedPoly constant_;
};

inline constexpr int kMaxExpansionOrder = 3;

// Coefficients of ξ^0 … ξ^order in (d/dξ) log σ(u − 𝒜(ξ)) = −Σ_i 𝒜'_i(ξ) ζ_{w_i}(u − 𝒜(ξ)).
inline std::vector<AbelianExpr> log_sigma_derivative_expansion(const FirstKindBasis& fb, int order) {
  if (order < 0) throw Error(ErrorKind::InvalidInput, "negative expansion order");
  if (order > kMaxExpansionOrder)
    throw Error(ErrorKind::OrderExceedsSupport, "expansion order " + std::to_string(order) + " exceeds supported 3");
  int N = order;
  std::vector<LaurentSeries> A;
  std::vector<int> w_of;
  for (std::size_t i = 0; i < fb.gaps.size(); ++i) {
    if (fb.gaps[i] > N + 1) continue;
    if (fb.u_series[i].truncation_order() < N + 2)
      throw Error(ErrorKind::TruncationTooShallow, "u series too short for the requested order");
    A.push_back(fb.u_series[i].truncated(N + 2));
    w_of.push_back(fb.gaps[i]);
  }
  std::vector<AbelianExpr> D(static_cast<std::size_t>(N + 1));
  const int T = N + 1;

  // Products of r components of 𝒜, over ordered tuples of indices into A.
  struct Prod {
    std::vector<int> idx;
    LaurentSeries series;
  };
  std::vector<Prod> level{{{}, LaurentSeries::monomial(1, 0, T)}};
  std::vector<std::vector<Prod>> by_rank{level};
  for (int r = 1; r <= N; ++r) {
    std::vector<Prod> next;
    for (const auto& p : by_rank.back())
      for (std::size_t j = 0; j < A.size(); ++j) {
        if (w_of[j] > N) continue;
        LaurentSeries s = (p.series * A[j]).truncated(T);
        if (s.is_zero()) continue;
        auto idx = p.idx;
        idx.push_back(static_cast<int>(j));
        next.push_back({idx, s});
      }
    by_rank.push_back(next);
  }

  Rational fact(1);
  for (std::size_t i = 0; i < A.size(); ++i) {
    LaurentSeries dA = A[i].derivative().truncated(T);
    // −A'_i ζ_{w_i}
    for (int k = 0; k < T; ++k) {
      WeightedPoly c = dA.coefficient(k);
      if (!c.is_zero()) D[k].add(AbelianSymbol::zeta(w_of[i]), -c);
    }
    fact = Rational(1);
    for (int r = 1; r <= N; ++r) {
      fact *= Rational(r);
      // −A'_i · (−(−1)^r / r!) ΠA · ℘_{w_i, J}
      Rational coef = (r % 2 == 0 ? Rational(1) : Rational(-1)) / fact;
      for (const auto& p : by_rank[static_cast<std::size_t>(r)]) {
        LaurentSeries s = (dA * p.series).truncated(T);
        if (s.is_zero()) continue;
        std::vector<int> idx{w_of[i]};
        for (int j : p.idx) idx.push_back(w_of[static_cast<std::size_t>(j)]);
        AbelianSymbol sym = AbelianSymbol::wp(idx);
        for (int k = 0; k < T; ++k) {
          WeightedPoly c = s.coefficient(k);
          if (!c.is_zero()) D[k].add(sym, c.scaled(coef));
        }
      }
    }
  }
  return D;
}

// R_ℓ = −res r_ℓ(ξ) (d/dξ) log σ(u − 𝒜(ξ)).
inline std::vector<AbelianExpr> zeta_relations(const CurveFamily& fam, const SecondKindBasis& sb,
                                               const std::vector<AbelianExpr>& expansion) {
  std::vector<AbelianExpr> R;
  for (std::size_t l = 0; l < sb.r_series.size(); ++l) {
    int ell = static_cast<int>(l) + 1;
    const LaurentSeries& r = sb.r_series[l];
    if (r.lowest_exponent() < -static_cast<int>(expansion.size()))
      throw Error(ErrorKind::TruncationTooShallow, "expansion too short for r_" + std::to_string(ell));
    AbelianExpr acc;
    for (int k = 0; k < static_cast<int>(expansion.size()); ++k) {
      WeightedPoly c = r.coefficient(-1 - k);
      if (!c.is_zero()) acc -= c * expansion[static_cast<std::size_t>(k)];
    }
    for (const auto& [s, c] : acc.terms()) {
      if (!s.is_zeta()) continue;
      bool expected = s.indices[0] == ell && fam.is_gap(ell) && c == WeightedPoly(-1);
      if (!expected)
        throw Error(ErrorKind::ZetaLeakage, "R_" + std::to_string(ell) + " contains " + c.to_string() + "*" + s.to_string());
    }
    if (fam.is_gap(ell) && acc.coefficient(AbelianSymbol::zeta(ell)).is_zero())
      throw Error(ErrorKind::ZetaLeakage, "R_" + std::to_string(ell) + " lacks its zeta term");
    R.push_back(acc);
  }
  return R;
}

struct RFunction {
  int weight = 0;
  std::map<int, std::pair<Monomial, AbelianExpr>> terms;  // by monomial weight

  void add(const Monomial& m, const AbelianExpr& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m.weight);
    if (it == terms.end()) {
      terms.emplace(m.weight, std::make_pair(m, c));
    } else {
      it->second.second += c;
      if (it->second.second.is_zero()) terms.erase(it);
    }
  }
};

struct InversionSystem {
  CurveFamily fam;
  std::vector<AbelianExpr> zeta_relations;
  std::vector<EntireRationalFn> leading;                // 𝓜̃_ℓ
  std::vector<std::map<int, AbelianExpr>> coefficients;  // A_{ℓ,w}, by gap w
  std::vector<RFunction> r_functions;
};

inline InversionSystem build_inversion_system(const CurveFamily& fam, int order) {
  if (fam.n() > 5) throw Error(ErrorKind::OrderExceedsSupport, "n > 5 needs wp symbols beyond the supported rank");
  auto ch = expand_at_infinity(fam, order);
  auto fb = first_kind_basis(ch);
  auto sb = associated_second_kind(ch, fb);
  int L = fam.system_size();
  auto D = log_sigma_derivative_expansion(fb, L - 1);
  InversionSystem sys{fam, zeta_relations(fam, sb, D), sb.numerators, {}, {}};
  int g = fam.genus();
  for (int l = 1; l <= L; ++l) {
    const AbelianExpr& R = sys.zeta_relations[static_cast<std::size_t>(l - 1)];
    RFunction rf;
    rf.weight = 2 * g + l - 1;
    for (const auto& [w, t] : sys.leading[static_cast<std::size_t>(l - 1)].terms) rf.add(t.first, AbelianExpr(t.second));
    std::map<int, AbelianExpr> Acol;
    for (int w : fam.gaps()) {
      AbelianExpr A = R.derivative(w);
      Acol[w] = A;
      rf.add(monomial_with_label(fam, -w), -A);
    }
    sys.coefficients.push_back(Acol);
    sys.r_functions.push_back(rf);
  }
  return sys;
}

inline InversionSystem build_inversion_system(const CurveFamily& fam) {
  return build_inversion_system(fam, default_order(fam));
}

enum class EmitFormat { latex, json };

namespace detail {

inline std::string monomial_latex(const Monomial& m) {
  std::string s;
  if (m.j) s += m.j == 1 ? "y" : "y^{" + std::to_string(m.j) + "}";
  if (m.i) s += m.i == 1 ? "x" : "x^{" + std::to_string(m.i) + "}";
  return s;
}

inline nlohmann::ordered_json lambda_json(const LambdaMonomial& m) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (auto [k, e] : m.factors()) o[std::to_string(k)] = e;
  return o;
}

inline nlohmann::ordered_json poly_json(const WeightedPoly& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back({{"lambda", lambda_json(m)}, {"rational", c.to_string()}});
  return arr;
}

}  // namespace detail

inline nlohmann::ordered_json system_to_json(const InversionSystem& sys) {
  using nlohmann::ordered_json;
  const auto& fam = sys.fam;
  ordered_json j;
  j["n"] = fam.n();
  j["s"] = fam.s();
  j["m"] = fam.m();
  j["genus"] = fam.genus();
  j["g"] = fam.genus();
  j["gaps"] = fam.gaps();
  j["terms"] = fam.term_set() == TermSet::standard ? "standard" : "extended";
  ordered_json fns = ordered_json::array();
  for (const auto& rf : sys.r_functions) {
    ordered_json terms = ordered_json::array();
    for (auto it = rf.terms.rbegin(); it != rf.terms.rend(); ++it) {
      const auto& [m, c] = it->second;
      ordered_json coef;
      if (!c.constant().is_zero()) coef["constant"] = detail::poly_json(c.constant());
      ordered_json syms = ordered_json::array();
      for (const auto& [s, p] : c.terms())
        for (const auto& [lm, r] : p.terms())
          syms.push_back({{"kind", s.kind()}, {"indices", s.indices}, {"lambda", detail::lambda_json(lm)}, {"rational", r.to_string()}});
      coef["symbols"] = syms;
      terms.push_back({{"monomial", {{"j", m.j}, {"i", m.i}}}, {"coefficient", coef}});
    }
    fns.push_back({{"weight", rf.weight}, {"terms", terms}});
  }
  j["functions"] = fns;
  return j;
}

inline std::string emit_system(const InversionSystem& sys, EmitFormat format) {
  if (format == EmitFormat::json) return system_to_json(sys).dump(2) + "\n";
  std::ostringstream os;
  for (const auto& rf : sys.r_functions) {
    os << "R_{" << rf.weight << "}(x,y;u) = ";
    bool first = true;
    for (auto it = rf.terms.rbegin(); it != rf.terms.rend(); ++it) {
      const auto& [m, c] = it->second;
      std::string mono = detail::monomial_latex(m);
      std::string body = c.to_latex();
      std::size_t count = c.constant().terms().size();
      for (const auto& [sym, p] : c.terms()) count += p.terms().size();
      bool simple = count == 1;
      if (simple) {
        bool neg = body[0] == '-';
        std::string mag = neg ? body.substr(1) : body;
        if (mag == "1" && !mono.empty()) mag.clear();
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + ")) << mag << mono;
      } else {
        os << (first ? "" : " + ") << "\\left(" << body << "\\right)" << mono;
      }
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace jip
