#include "knotforge/family.hpp"
#include "knotforge/invariants.hpp"
#include "support/random_diagrams.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace knotforge;

namespace {

const KnotTable& table() {
  static const KnotTable t = KnotTable::load_default();
  return t;
}

}  // namespace

TEST(Invariants, ConwayCoefficients) {
  EXPECT_EQ(c4(conway_family(5)), -5);
  EXPECT_EQ(c4(LaurentPoly(1)), 0);
  EXPECT_EQ(c4(anchors::conway_l0()), 0);
  EXPECT_EQ(a2(anchors::conway_l0()), 2);
  EXPECT_THROW(c4(LaurentPoly::monomial(Rational(1, 2), HalfInt::whole(4))), InvariantError);
  EXPECT_THROW(a2(vars::sqrt_t()), InvariantError);
}

TEST(Invariants, JonesMoments) {
  for (int n : {0, 1, 4}) {
    EXPECT_EQ(v_i(jones_family(n), 2), -12);
    EXPECT_EQ(v_i(jones_family(n), 3), 36 * n + 108);
    EXPECT_EQ(v_i(jones_family(n), 0), 1);
  }
}

TEST(Invariants, CassonOfMinusOneSurgery) {
  EXPECT_EQ(casson_minus_one_surgery(2), -2);
  EXPECT_EQ(casson_minus_one_surgery(0), 0);
  EXPECT_EQ(casson_minus_one_surgery(a2(conway(table().diagram("trefoil")))), -1);
}

TEST(Invariants, OhtsukiFormula) {
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(ohtsuki_lambda2(-12, 36 * n + 108, -n), 72 * n + 270);
  EXPECT_EQ(ohtsuki_lambda2(0, 0, 0), 0);
  EXPECT_EQ(ohtsuki_lambda2(1, 1, 0), Rational(5, 6) + Rational(5, 3));
}

TEST(Invariants, TrefoilFromOracle) {
  const PDDiagram d = table().diagram("trefoil");
  const LaurentPoly v = jones_bracket_oracle(d);
  const Rational v2 = moment(v, 2);
  const Rational v3 = moment(v, 3);
  EXPECT_EQ(v2, -6);
  const SurgeryInvariants inv = surgery_invariants(d);
  EXPECT_EQ(inv.v3, v3);
  EXPECT_EQ(inv.lambda2, ohtsuki_lambda2(v2, v3, 0));
  EXPECT_EQ(inv.lambda2, 69);
  EXPECT_EQ(inv.lambda1, -1);
}

TEST(Invariants, FiveTwo) {
  const SurgeryInvariants inv = surgery_invariants(table().diagram("5_2"));
  EXPECT_EQ(inv.a2, 2);
  EXPECT_EQ(inv.c4, 0);
  EXPECT_EQ(inv.v0, 1);
  EXPECT_EQ(inv.v1, 0);
  EXPECT_EQ(inv.v2, -12);
  EXPECT_EQ(inv.v3, 108);
  EXPECT_EQ(inv.lambda1, -2);
  EXPECT_EQ(inv.lambda2, 270);
}

TEST(Invariants, NineFortyFive) {
  const SurgeryInvariants inv = surgery_invariants(table().diagram("9_45"));
  EXPECT_EQ(inv.a2, 2);
  EXPECT_EQ(inv.c4, -1);
  EXPECT_EQ(inv.v2, -12);
  EXPECT_EQ(inv.v3, 144);
  EXPECT_EQ(inv.lambda1, -2);
  EXPECT_EQ(inv.lambda2, 342);
}

TEST(Invariants, Unknot) {
  const SurgeryInvariants inv = surgery_invariants(PDDiagram::unknot());
  EXPECT_EQ(inv.v0, 1);
  EXPECT_EQ(inv.a2, 0);
  EXPECT_EQ(inv.c4, 0);
  EXPECT_EQ(inv.v2, 0);
  EXPECT_EQ(inv.v3, 0);
  EXPECT_EQ(inv.lambda1, 0);
  EXPECT_EQ(inv.lambda2, 0);
}

TEST(Invariants, RejectsLinks) {
  EXPECT_THROW(surgery_invariants(table().diagram("hopf+")), InvariantError);
  EXPECT_THROW(surgery_invariants(PDDiagram::unlink(2)), InvariantError);
}

TEST(Invariants, AssertsClassicalCompatibility) {
  EXPECT_THROW(surgery_invariants(anchors::conway_l0(), LaurentPoly(1)), InvariantError);
}

TEST(Invariants, DistinguishFamily) {
  SkeinEngine engine;
  std::vector<SurgeryInvariants> members;
  for (int n = 0; n <= 2; ++n) members.push_back(surgery_invariants(resolve_family_member(table(), n, engine).diagram, engine));
  for (int i = 0; i <= 2; ++i) {
    EXPECT_EQ(members[i].lambda2, 72 * i + 270);
    for (int j = 0; j <= 2; ++j) {
      const DistinguishReport r = distinguish(members[i], members[j]);
      EXPECT_EQ(r.verdict, i == j ? Verdict::inconclusive : Verdict::distinguished);
      EXPECT_EQ(r.witness, i == j ? "" : "lambda2");
    }
  }
  const DistinguishReport r = distinguish(table().diagram("5_2"), table().diagram("9_45"), engine);
  EXPECT_EQ(r.verdict, Verdict::distinguished);
  EXPECT_EQ(r.first.lambda2, 270);
  EXPECT_EQ(r.second.lambda2, 342);
  EXPECT_STREQ(to_string(r.verdict), "distinguished");
}

TEST(Invariants, DistinguishSelfIsInconclusive) {
  SkeinEngine engine;
  const DistinguishReport r = distinguish(table().diagram("9_45"), table().diagram("9_45"), engine);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_STREQ(to_string(r.verdict), "inconclusive");
}

TEST(Invariants, LambdaOneWitness) {
  SurgeryInvariants a{};
  SurgeryInvariants b{};
  b.lambda1 = 1;
  const DistinguishReport r = distinguish(a, b);
  EXPECT_EQ(r.verdict, Verdict::distinguished);
  EXPECT_EQ(r.witness, "lambda1");
}

TEST(InvariantsProperty, KnotNormalizationsOnRandomKnots) {
  std::mt19937_64 rng(555);
  SkeinEngine engine;
  int knots = 0;
  while (knots < 100) {
    const PDDiagram d = knotforge::testing::random_diagram(rng, 5, 12);
    if (d.component_count() != 1) continue;
    ++knots;
    const SurgeryInvariants inv = surgery_invariants(d, engine);
    EXPECT_EQ(inv.v0, 1) << d.render();
    EXPECT_EQ(inv.v1, 0) << d.render();
    EXPECT_EQ(inv.v2, -6 * inv.a2) << d.render();
  }
}

TEST(InvariantsProperty, FamilyGapIsConstant) {
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(lambda2_family(n) - lambda2_family(n - 1), 72);
}
