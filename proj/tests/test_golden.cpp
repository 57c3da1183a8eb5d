#include <gtest/gtest.h>

#include <set>

#include "jip/golden.hpp"

using namespace jip;

namespace {

std::vector<golden::Case> all_cases() {
  static const auto cs = golden::cases();
  return cs;
}

class GoldenCase : public ::testing::TestWithParam<golden::Case> {};

TEST_P(GoldenCase, MatchesReference) {
  for (const auto& chk : golden::run_case(GetParam()))
    EXPECT_TRUE(chk.pass) << chk.case_id << " " << chk.item << "\n  expected: " << chk.expected
                          << "\n  actual:   " << chk.actual;
}

INSTANTIATE_TEST_SUITE_P(Reference, GoldenCase, ::testing::ValuesIn(all_cases()),
                         [](const auto& info) { return info.param.id; });

}  // namespace

TEST(GoldenParser, Basics) {
  auto e = golden::parse("2*y*x^(2*m+1) - l1^2/3*P[2,1]", 1);
  EXPECT_EQ(e.terms().size(), 2u);
  EXPECT_EQ(e, golden::parse("-(1/3)*l1*l1*P[1,2] + 2*x^3*y", 0));
  EXPECT_THROW(golden::parse("P[1,1]*Z[2]"), Error);
  EXPECT_THROW(golden::parse("x/y"), Error);
  EXPECT_THROW(golden::parse("x +"), Error);
}

TEST(GoldenParser, TemplateIndex) {
  EXPECT_EQ(golden::parse("P[1,w]", 0, 5), golden::parse("P[5,1]"));
}

TEST(Golden, CoverageOfTheoremList) {
  std::set<std::string> ids;
  for (const auto& c : all_cases()) ids.insert(c.id);
  for (const char* id : {"ex34", "ex34rem", "ex37", "ex35", "T33m1_m1", "T33m1_m2", "T33m2_m1", "T33m2_m2", "T44m1_m1",
                         "T44m3_m1", "T55m1_m1", "T55m2_m1", "T55m3_m1", "T55m4_m1", "HYP_m2", "HYP_m3", "HYP_m4"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Golden, FunctionsAreWeightHomogeneous) {
  for (const auto& c : all_cases()) {
    auto fam = make_family(c.n, c.s, {}, c.set);
    auto sys = build_inversion_system(fam);
    for (const auto& rf : sys.r_functions)
      for (const auto& [w, t] : rf.terms) EXPECT_TRUE(t.second.is_homogeneous_of(rf.weight - w)) << c.id;
  }
}

TEST(Golden, DetectsPerturbation) {
  auto cs = golden::cases_for(3, 4);
  ASSERT_FALSE(cs.empty());
  auto c = cs.front();
  auto baseline = golden::run_case(c);
  EXPECT_GE(baseline.size(), 7u);
  c.functions[1] = c.functions[1] + golden::parse("l1*x");
  c.puiseux = golden::parse("1 + l2/3*t^2");
  c.through = 6;
  int failed = 0;
  for (const auto& chk : golden::run_case(c)) failed += chk.pass ? 0 : 1;
  EXPECT_EQ(failed, 2);
}
