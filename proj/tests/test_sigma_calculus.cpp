#include <gtest/gtest.h>

#include "jip/sigma_calculus.hpp"

using namespace jip;

namespace {

WeightedPoly L(int k) { return WeightedPoly::lambda(k); }
WeightedPoly Q(long p, long q = 1) { return WeightedPoly(Rational(p, q)); }
AbelianExpr Z(int i, const WeightedPoly& c = Q(1)) { return AbelianExpr::symbol(AbelianSymbol::zeta(i), c); }
AbelianExpr P(std::vector<int> idx, const WeightedPoly& c = Q(1)) {
  return AbelianExpr::symbol(AbelianSymbol::wp(std::move(idx)), c);
}

std::vector<AbelianExpr> expansion(int n, int s, int order) {
  auto fam = make_family(n, s);
  return log_sigma_derivative_expansion(first_kind_basis(expand_at_infinity(fam)), order);
}

AbelianExpr coefficient_of(const RFunction& rf, const CurveFamily& fam, int j, int i) {
  auto it = rf.terms.find(j * fam.s() + i * fam.n());
  return it == rf.terms.end() ? AbelianExpr{} : it->second.second;
}

}  // namespace

TEST(Symbols, Canonical) {
  EXPECT_EQ(AbelianSymbol::wp({5, 1}), AbelianSymbol::wp({1, 5}));
  EXPECT_EQ(AbelianSymbol::wp({3, 1}).to_string(), "P[1,3]");
  EXPECT_EQ(AbelianSymbol::zeta(2).kind(), "zeta");
  EXPECT_EQ(AbelianSymbol::wp({1, 1, 2}).kind(), "wp3");
  EXPECT_EQ(AbelianSymbol::wp({1, 5}).to_latex(), "\\wp_{1,5}(u)");
  EXPECT_LT(AbelianSymbol::zeta(7), AbelianSymbol::wp({1, 1}));
  EXPECT_EQ(AbelianSymbol::wp({1, 2}).weight(), 3);
}

TEST(Symbols, Derivative) {
  auto e = Z(2) + P({1, 1});
  auto d = e.derivative(5);
  EXPECT_EQ(d, -P({2, 5}) + P({1, 1, 5}));
  EXPECT_TRUE((Q(0) * e).is_zero());
}

TEST(LogSigma, ConstantTermIsMinusZeta1) {
  for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {4, 5}, {5, 7}}) {
    auto D = expansion(n, s, 0);
    ASSERT_EQ(D.size(), 1u);
    EXPECT_EQ(D[0], -Z(1));
  }
}

TEST(LogSigma, C44m1SecondOrder) {
  auto D = expansion(4, 5, 2);
  EXPECT_EQ(D[1], -(Z(2) + P({1, 1})));
  EXPECT_EQ(D[2], -(Z(3) + Z(1, Q(1, 4) * L(2)) + P({1, 2}, Q(3, 2)) - P({1, 1, 1}, Q(1, 2))));
}

TEST(LogSigma, C55m2FirstOrder) {
  auto D = expansion(5, 7, 1);
  EXPECT_EQ(D[1], -(Z(2) - Z(1, Q(1, 5) * L(1)) + P({1, 1})));
}

TEST(LogSigma, C55m1ThirdOrder) {
  auto D = expansion(5, 6, 3);
  AbelianExpr want = -(Z(4) + Z(2, Q(1, 5) * L(2)) + Z(1, Q(1, 5) * L(3)) + P({2, 2}, Q(1, 2)) + P({1, 3}, Q(4, 3)) +
                       P({1, 1}, Q(8, 15) * L(2)) - P({1, 1, 2}) + P({1, 1, 1, 1}, Q(1, 6)));
  EXPECT_EQ(D[3], want);
}

TEST(LogSigma, OrderCap) {
  auto fam = make_family(5, 6);
  auto fb = first_kind_basis(expand_at_infinity(fam));
  try {
    log_sigma_derivative_expansion(fb, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderExceedsSupport);
  }
  try {
    build_inversion_system(make_family(6, 7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderExceedsSupport);
  }
}

TEST(ZetaRelations, Examples) {
  auto R = build_inversion_system(make_family(3, 7)).zeta_relations;
  EXPECT_EQ(R[1], -(Z(2) + P({1, 1})));
  R = build_inversion_system(make_family(5, 6)).zeta_relations;
  EXPECT_EQ(R[3], -(Z(4) + P({2, 2}, Q(1, 2)) + P({1, 3}, Q(4, 3)) + P({1, 1}, Q(1, 3) * L(2)) - P({1, 1, 2}) +
                    P({1, 1, 1, 1}, Q(1, 6))));
  R = build_inversion_system(make_family(4, 7)).zeta_relations;
  EXPECT_EQ(R[2], -(Z(3) + P({1, 2}, Q(3, 2)) - P({1, 1}, Q(1, 2) * L(1)) - P({1, 1, 1}, Q(1, 2))));
}

TEST(ZetaRelations, LeakageDetected) {
  // Uncorrected dr2 on (3,5) carries λ1 ζ1.
  auto fam = make_family(3, 5);
  auto ch = expand_at_infinity(fam);
  auto fb = first_kind_basis(ch);
  auto sb = associated_second_kind(ch, fb);
  auto raw = WeightedPoly(2) * (monomial_series(ch, monomial_with_label(fam, 2)) * ch.factor);
  sb.dr_series[1] = raw;
  sb.r_series[1] = series_integrate(raw);
  try {
    zeta_relations(fam, sb, log_sigma_derivative_expansion(fb, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZetaLeakage);
  }
}

TEST(ZetaRelations, SingleZetaEverywhere) {
  for (auto [n, s] : std::vector<std::pair<int, int>>{{3, 4}, {3, 8}, {4, 5}, {4, 7}, {5, 6}, {5, 7}, {5, 8}, {5, 9}}) {
    auto fam = make_family(n, s);
    auto sys = build_inversion_system(fam);
    for (std::size_t l = 0; l < sys.zeta_relations.size(); ++l) {
      int ell = static_cast<int>(l) + 1;
      const auto& R = sys.zeta_relations[l];
      EXPECT_EQ(R.coefficient(AbelianSymbol::zeta(ell)), Q(-1));
      int zetas = 0;
      for (const auto& [sym, c] : R.terms()) zetas += sym.is_zeta();
      EXPECT_EQ(zetas, 1);
      EXPECT_TRUE(R.is_homogeneous_of(ell)) << fam.name() << " l=" << ell;
    }
  }
}

TEST(Inversion, Curve34) {
  auto fam = make_family(3, 4);
  auto sys = build_inversion_system(fam);
  ASSERT_EQ(sys.r_functions.size(), 2u);
  const auto& R6 = sys.r_functions[0];
  EXPECT_EQ(R6.weight, 6);
  EXPECT_EQ(coefficient_of(R6, fam, 0, 2), AbelianExpr(Q(1)));
  EXPECT_EQ(coefficient_of(R6, fam, 1, 0), -P({1, 1}));
  EXPECT_EQ(coefficient_of(R6, fam, 0, 1), -P({1, 2}));
  EXPECT_EQ(coefficient_of(R6, fam, 0, 0), -P({1, 5}));
  const auto& R7 = sys.r_functions[1];
  EXPECT_EQ(coefficient_of(R7, fam, 1, 1), AbelianExpr(Q(2)));
  EXPECT_EQ(coefficient_of(R7, fam, 1, 0), -(P({1, 2}) - P({1, 1, 1})));
  EXPECT_EQ(coefficient_of(R7, fam, 0, 1), -(P({2, 2}) - P({1, 1, 2})));
  EXPECT_EQ(coefficient_of(R7, fam, 0, 0), -(P({2, 5}) - P({1, 1, 5})));
}

TEST(Inversion, Curve25) {
  auto fam = make_family(2, 5);
  auto sys = build_inversion_system(fam);
  const auto& R4 = sys.r_functions[0];
  EXPECT_EQ(coefficient_of(R4, fam, 0, 2), AbelianExpr(Q(1)));
  EXPECT_EQ(coefficient_of(R4, fam, 0, 1), -P({1, 1}));
  EXPECT_EQ(coefficient_of(R4, fam, 0, 0), -P({1, 3}));
  const auto& R5 = sys.r_functions[1];
  EXPECT_EQ(coefficient_of(R5, fam, 1, 0), AbelianExpr(Q(2)));
  EXPECT_EQ(coefficient_of(R5, fam, 0, 1), P({1, 1, 1}));
  EXPECT_EQ(coefficient_of(R5, fam, 0, 0), P({1, 1, 3}));
}

TEST(Inversion, Curve35Leading) {
  auto fam = make_family(3, 5);
  auto sys = build_inversion_system(fam);
  const auto& R9 = sys.r_functions[1];
  EXPECT_EQ(R9.weight, 9);
  EXPECT_EQ(coefficient_of(R9, fam, 0, 3), AbelianExpr(Q(2)));
  EXPECT_EQ(coefficient_of(R9, fam, 1, 1), AbelianExpr(L(1)));
}

TEST(Inversion, DerivativeConsistency) {
  for (auto [n, s] : std::vector<std::pair<int, int>>{{3, 4}, {4, 7}, {5, 8}}) {
    auto fam = make_family(n, s);
    auto sys = build_inversion_system(fam);
    for (std::size_t l = 0; l < sys.zeta_relations.size(); ++l) {
      auto d1 = sys.zeta_relations[l].derivative(1);
      EXPECT_EQ(d1, sys.coefficients[l].at(1));
      for (int w : fam.gaps()) {
        Monomial M = monomial_with_label(fam, -w);
        EXPECT_EQ(coefficient_of(sys.r_functions[l], fam, M.j, M.i), -sys.coefficients[l].at(w));
      }
    }
  }
}

TEST(Inversion, WeightHomogeneity) {
  for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 7}, {3, 7}, {4, 5}, {5, 9}}) {
    auto sys = build_inversion_system(make_family(n, s));
    for (const auto& rf : sys.r_functions)
      for (const auto& [w, t] : rf.terms) EXPECT_TRUE(t.second.is_homogeneous_of(rf.weight - w));
  }
}

TEST(Emit, Latex) {
  auto sys = build_inversion_system(make_family(3, 4));
  auto tex = emit_system(sys, EmitFormat::latex);
  EXPECT_NE(tex.find("\\wp_{1,5}(u)"), std::string::npos);
  EXPECT_NE(tex.find("R_{6}(x,y;u) = x^{2} - \\wp_{1,1}(u)y"), std::string::npos) << tex;
  EXPECT_EQ(tex, emit_system(build_inversion_system(make_family(3, 4)), EmitFormat::latex));
}

TEST(Emit, JsonSchema) {
  auto sys = build_inversion_system(make_family(2, 5));
  auto text = emit_system(sys, EmitFormat::json);
  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["s"], 5);
  EXPECT_EQ(j["g"], 2);
  EXPECT_EQ(j["gaps"], nlohmann::json::array({1, 3}));
  ASSERT_EQ(j["functions"].size(), 2u);
  EXPECT_EQ(j["functions"][0]["weight"], 4);
  const auto& t0 = j["functions"][0]["terms"][0];
  EXPECT_EQ(t0["monomial"]["i"], 2);
  EXPECT_TRUE(t0["coefficient"].contains("constant"));
  const auto& sym = j["functions"][1]["terms"][1]["coefficient"]["symbols"][0];
  EXPECT_EQ(sym["kind"], "wp3");
  EXPECT_EQ(sym["rational"], "1");
  EXPECT_EQ(text, emit_system(sys, EmitFormat::json));
}
