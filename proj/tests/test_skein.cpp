#include "knotforge/family.hpp"
#include "knotforge/skein.hpp"
#include "support/random_diagrams.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace knotforge;
using knotforge::testing::random_diagram;

namespace {

const LaurentPoly kRootDiff = vars::sqrt_t() - vars::sqrt_t().inverted();

void expect_skein_identities(const PDDiagram& d, SkeinEngine& engine) {
  for (int i = 0; i < d.crossing_count(); ++i) {
    const PDDiagram plus = d.sign(i) > 0 ? d : d.switched(i);
    const PDDiagram minus = d.sign(i) > 0 ? d.switched(i) : d;
    const PDDiagram zero = d.smoothed(i);
    EXPECT_EQ(engine.conway(plus) - engine.conway(minus), -vars::z_pow(1) * engine.conway(zero))
        << d.render() << " at " << i;
    EXPECT_EQ(vars::t_pow(1) * engine.jones(plus) - vars::t_pow(-1) * engine.jones(minus),
              kRootDiff * engine.jones(zero))
        << d.render() << " at " << i;
  }
}

}  // namespace

TEST(Skein, Unknot) {
  EXPECT_EQ(conway(PDDiagram::unknot()), LaurentPoly(1));
  EXPECT_EQ(jones(PDDiagram::unknot()), LaurentPoly(1));
  EXPECT_EQ(jones(parse_pd("X(1,1,2,2)")), LaurentPoly(1));
}

TEST(Skein, UnlinkValues) {
  EXPECT_EQ(SkeinEngine::jones_unlink(2), vars::sqrt_t() + vars::sqrt_t().inverted());
  EXPECT_EQ(jones(PDDiagram::unlink(2)), vars::sqrt_t() + vars::sqrt_t().inverted());
  EXPECT_EQ(jones(PDDiagram::unlink(3)), (vars::sqrt_t() + vars::sqrt_t().inverted()).pow(2));
  EXPECT_EQ(conway(PDDiagram::unlink(2)), LaurentPoly());
  EXPECT_EQ(jones(parse_pd("Xp(1,3,2,4) Xm(2,3,1,4)")), SkeinEngine::jones_unlink(2));
}

TEST(Skein, Trefoil) {
  const PDDiagram d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  EXPECT_EQ(conway(d), LaurentPoly::from_integral({{0, 1}, {2, 1}}));
  EXPECT_EQ(jones(d), LaurentPoly::from_integral({{-1, 1}, {-3, 1}, {-4, -1}}));
  EXPECT_EQ(jones(d.mirrored()), LaurentPoly::from_integral({{1, 1}, {3, 1}, {4, -1}}));
}

TEST(Skein, HopfLink) {
  const PDDiagram d = parse_pd("X(1,4,2,3) X(3,2,4,1)");
  EXPECT_EQ(conway(d), -vars::z_pow(1));
  EXPECT_EQ(conway(d.mirrored()), vars::z_pow(1));
  EXPECT_EQ(jones(d), LaurentPoly::from_doubled({{-1, 1}, {-5, 1}}));
}

TEST(Skein, FiveTwoMatchesAnchor) {
  const KnotTable table = KnotTable::load_default();
  EXPECT_EQ(jones(table.diagram("5_2")), anchors::jones_l0());
  EXPECT_EQ(conway(table.diagram("5_2")), anchors::conway_l0());
}

TEST(Skein, SplitDiagramsHaveZeroConway) {
  const PDDiagram trefoil = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  const PDDiagram split = parse_pd("loops=1 X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  EXPECT_EQ(conway(split), LaurentPoly());
  EXPECT_EQ(jones(split), jones(trefoil) * SkeinEngine::jones_unlink(2));
  const PDDiagram two_trefoils =
      parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(7,10,8,11) X(9,12,10,7) X(11,8,12,9)");
  EXPECT_EQ(two_trefoils.component_count(), 2);
  EXPECT_EQ(conway(two_trefoils), LaurentPoly());
}

TEST(Skein, OracleAgreesOnTable) {
  const KnotTable table = KnotTable::load_default();
  SkeinEngine engine;
  for (const auto& name : table.names()) {
    const PDDiagram d = table.diagram(name);
    EXPECT_EQ(engine.jones(d), jones_bracket_oracle(d)) << name;
    EXPECT_EQ(engine.jones(d.mirrored()), jones_bracket_oracle(d.mirrored())) << name;
  }
}

TEST(Skein, FrozenBracketConstants) {
  EXPECT_EQ(kBracketDirection, -1);
  EXPECT_EQ(kBracketSign, -1);
  const KnotTable table = KnotTable::load_default();
  EXPECT_EQ(jones_bracket_oracle(table.diagram("5_2")), anchors::jones_l0());
}

TEST(Skein, IdentitiesOnTableEntries) {
  const KnotTable table = KnotTable::load_default();
  SkeinEngine engine;
  for (const char* name : {"trefoil", "hopf+", "5_2", "9_45", "L7n2"}) expect_skein_identities(table.diagram(name), engine);
}

TEST(Skein, KnotNormalizations) {
  const KnotTable table = KnotTable::load_default();
  SkeinEngine engine;
  for (const auto& name : table.names()) {
    const PDDiagram d = table.diagram(name);
    if (d.component_count() != 1) continue;
    const LaurentPoly v = engine.jones(d);
    EXPECT_EQ(v.at_one(), 1) << name;
    EXPECT_EQ(moment(v, 1), 0) << name;
    EXPECT_EQ(engine.conway(d).coeff(HalfInt::whole(0)), 1) << name;
  }
}

TEST(Skein, BudgetExceeded) {
  const KnotTable table = KnotTable::load_default();
  SkeinEngine small(SkeinOptions{4, 0, true});
  EXPECT_THROW(small.jones(table.diagram("5_2")), BudgetExceeded);
  EXPECT_THROW(small.conway(table.diagram("5_2")), BudgetExceeded);
  EXPECT_NO_THROW(small.jones(table.diagram("trefoil")));
  EXPECT_THROW(jones_bracket_oracle(table.diagram("11n63"), 8), BudgetExceeded);
}

TEST(Skein, MemoIsUsedAndConsistent) {
  const KnotTable table = KnotTable::load_default();
  SkeinEngine engine;
  const PDDiagram d = table.diagram("9_45");
  const LaurentPoly first = engine.jones(d);
  const std::size_t stored = engine.jones_memo().size();
  EXPECT_GT(stored, 0u);
  const auto hits = engine.jones_memo().hits();
  EXPECT_EQ(engine.jones(d), first);
  EXPECT_GT(engine.jones_memo().hits(), hits);
  EXPECT_EQ(engine.jones_memo().size(), stored);

  SkeinEngine plain(SkeinOptions{24, 0, false});
  EXPECT_EQ(plain.jones(d), first);
  EXPECT_EQ(plain.jones_memo().size(), 0u);
}

TEST(Skein, ParallelMatchesSerial) {
  const KnotTable table = KnotTable::load_default();
  SkeinEngine serial;
  SkeinEngine parallel(SkeinOptions{24, 3, true});
  for (const char* name : {"5_2", "9_45", "11n63", "L7n2"}) {
    const PDDiagram d = table.diagram(name);
    EXPECT_EQ(parallel.jones(d), serial.jones(d)) << name;
    EXPECT_EQ(parallel.conway(d), serial.conway(d)) << name;
  }
}

TEST(SkeinProperty, OracleOnRandomDiagrams) {
  std::mt19937_64 rng(9001);
  SkeinEngine engine;
  for (int trial = 0; trial < 200; ++trial) {
    const PDDiagram d = random_diagram(rng, 4, 12);
    EXPECT_EQ(engine.jones(d), jones_bracket_oracle(d)) << d.render();
  }
}

TEST(SkeinProperty, InvariantUnderRelabelAndCurls) {
  std::mt19937_64 rng(31337);
  SkeinEngine engine;
  const PDDiagram trefoil = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  for (const char* curled : {"X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,7,7,8)", "X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,8,7,7)"}) {
    EXPECT_EQ(engine.jones(parse_pd(curled)), engine.jones(trefoil));
    EXPECT_EQ(engine.conway(parse_pd(curled)), engine.conway(trefoil));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const PDDiagram d = random_diagram(rng, 4, 10);
    const PDDiagram r = knotforge::testing::rotate_labels(d, rng);
    EXPECT_EQ(engine.jones(r), engine.jones(d)) << d.render();
    EXPECT_EQ(engine.conway(r), engine.conway(d)) << d.render();
    EXPECT_EQ(engine.jones(d.mirrored()), engine.jones(d).inverted()) << d.render();
    EXPECT_EQ(engine.conway(d.mirrored()), d.component_count() % 2 == 1 ? engine.conway(d) : -engine.conway(d));
  }
}

TEST(SkeinProperty, IdentitiesOnRandomDiagrams) {
  std::mt19937_64 rng(2718);
  SkeinEngine engine;
  for (int trial = 0; trial < 100; ++trial) expect_skein_identities(random_diagram(rng, 4, 8), engine);
}

TEST(SkeinProperty, SplitUnionHasZeroConway) {
  std::mt19937_64 rng(161);
  SkeinEngine engine;
  for (int trial = 0; trial < 100; ++trial) {
    const PDDiagram d = random_diagram(rng, 4, 8);
    const PDDiagram split = parse_pd("loops=" + std::to_string(d.free_loops() + 1) + " " +
                                     (d.crossing_count() ? d.render().substr(d.free_loops() ? d.render().find('X') : 0)
                                                         : std::string()));
    EXPECT_EQ(engine.conway(split), LaurentPoly()) << split.render();
    EXPECT_EQ(engine.jones(split), engine.jones(d) * SkeinEngine::jones_unlink(2)) << split.render();
  }
}
