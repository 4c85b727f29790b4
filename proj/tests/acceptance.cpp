// Acceptance run: one PASS/FAIL line per criterion; nonzero exit on any failure.
#include "knotforge/config.hpp"
#include "knotforge/family.hpp"
#include "knotforge/fourmanifold.hpp"
#include "knotforge/invariants.hpp"
#include "support/fixtures.hpp"
#include "support/random_diagrams.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace knotforge;
using namespace knotforge::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failure notes for one criterion.
struct Tally {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Tally&)>& body) {
  Tally v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.problems.push_back(std::string("exception: ") + e.what());
  }
  const bool pass = v.problems.empty();
  if (!pass) ++failures;
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title;
  if (!v.notes.empty()) {
    std::cout << " (";
    for (std::size_t i = 0; i < v.notes.size(); ++i) std::cout << (i ? "; " : "") << v.notes[i];
    std::cout << ")";
  }
  std::cout << "\n";
  for (const auto& p : v.problems) std::cout << "    " << p << "\n";
}

std::string str(const Rational& r) { return knotforge::detail::str(r); }

}  // namespace

int main() {
  const KnotTable table = KnotTable::load_default();

  criterion(1, "Conway closed form on 5_2, 9_45, 11n63", [&](Tally& v) {
    for (const auto& [n, name] : family_table_names()) {
      SkeinEngine engine;
      const auto start = Clock::now();
      const LaurentPoly c = engine.conway(table.diagram(name));
      const double t = seconds_since(start);
      v.require(c == conway_family(n), name + ": got " + c.render("z") + ", want " + conway_family(n).render("z"));
      v.require(t < 1.0, name + ": took " + std::to_string(t) + " s");
    }
  });

  criterion(2, "Conway polynomial of J0 = L7n2 is z^3", [&](Tally& v) {
    SkeinEngine engine;
    auto f = [&](const PDDiagram& d) { return engine.conway(d); };
    const ChiralityChoice c = resolve_chirality(table.diagram("L7n2"), f, anchors::conway_j0());
    v.require(c.matched, "got " + c.value.render("z"));
    v.note(std::string("chirality ") + (c.mirrored ? "mirrored" : "as tabulated"));
  });

  criterion(3, "Jones values of 5_2, tilde V, 9_45 and 11n63", [&](Tally& v) {
    const auto start = Clock::now();
    SkeinEngine engine;
    const LaurentPoly v52 = engine.jones(table.diagram("5_2"));
    v.require(v52 == anchors::jones_l0(), "5_2: got " + v52.render("t"));
    const TildeV tv = tilde_v(table, engine);
    v.require(tv.value == anchors::tilde_v(), "tilde V: got " + tv.value.render("t"));
    for (int n = 1; n <= 2; ++n) {
      const ChiralityChoice c = resolve_family_member(table, n, engine);
      v.require(c.matched, "L" + std::to_string(n) + ": got " + c.value.render("t"));
      v.note(family_table_names()[n].second + (c.mirrored ? " mirrored" : " as tabulated"));
    }
    const double t = seconds_since(start);
    v.require(t < 10.0, "took " + std::to_string(t) + " s");
  });

  criterion(4, "Moments of jones_family(n), n <= 10, and of tilde V", [&](Tally& v) {
    for (int n = 0; n <= 10; ++n) {
      const LaurentPoly p = jones_family(n);
      v.require(moment(p, 2) == -12, "n=" + std::to_string(n) + ": v2 = " + str(moment(p, 2)));
      v.require(moment(p, 3) == 36 * n + 108, "n=" + std::to_string(n) + ": v3 = " + str(moment(p, 3)));
    }
    const LaurentPoly tv = anchors::tilde_v();
    const std::vector<Rational> want = {0, 2, -4, -28};
    for (int i = 0; i < 4; ++i) v.require(moment(tv, i) == want[i], "tilde V moment " + std::to_string(i));
  });

  criterion(5, "lambda2 = 72n+270, lambda1 = -2, family pairs distinguished", [&](Tally& v) {
    for (int n = 0; n <= 10; ++n) {
      v.require(lambda2_family(n) == 72 * n + 270, "closed form lambda2 at n=" + std::to_string(n));
      v.require(casson_minus_one_surgery(a2(conway_family(n))) == -2, "lambda1 at n=" + std::to_string(n));
    }
    SkeinEngine engine;
    std::vector<SurgeryInvariants> inv;
    for (int n = 0; n <= 2; ++n) {
      const ChiralityChoice c = resolve_family_member(table, n, engine);
      inv.push_back(surgery_invariants(c.diagram, engine));
      v.require(inv.back().lambda2 == 72 * n + 270, "engine lambda2 at n=" + std::to_string(n) + " is " +
                                                        str(inv.back().lambda2));
      v.require(inv.back().lambda1 == -2, "engine lambda1 at n=" + std::to_string(n));
    }
    for (int i = 0; i <= 2; ++i) {
      for (int j = 0; j <= 2; ++j) {
        if (i == j) continue;
        v.require(distinguish(inv[i], inv[j]).verdict == knotforge::Verdict::distinguished,
                  "L" + std::to_string(i) + " vs L" + std::to_string(j) + " not distinguished");
      }
    }
  });

  criterion(6, "bracket oracle equals skein Jones on the table and 200 random diagrams", [&](Tally& v) {
    SkeinEngine engine;
    for (const auto& name : table.names()) {
      const PDDiagram& d = table.diagram(name);
      v.require(engine.jones(d) == jones_bracket_oracle(d), "table entry " + name);
    }
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 200; ++trial) {
      const PDDiagram d = random_diagram(rng, 4, 10);
      v.require(engine.jones(d) == jones_bracket_oracle(d), "random diagram " + d.render());
    }
  });

  criterion(7, "fold-map conditions on the double, and single corruptions", [&](Tally& v) {
    for (int g = 0; g <= 3; ++g) {
      const std::string tag = "g=" + std::to_string(g) + ": ";
      v.require(failing(double_config(g)).empty(), tag + "double config fails");
      DoubleConfig c1 = double_config(g);
      c1.manifold.euler = 6;
      v.require(failing(c1) == std::vector<int>{1}, tag + "corruption of (1)");
      DoubleConfig c2 = double_config(g);
      c2.f1.components[0].cls = {1, 1};
      v.require(failing(c2) == std::vector<int>{2}, tag + "corruption of (2)");
      DoubleConfig c3 = double_config(g);
      c3.f0.components[1] = surface(2 * g + 2, {0, 1}, FoldKind::definite, false);
      c3.f1.components[0].genus = 2 + 2 * g;
      v.require(failing(c3) == std::vector<int>{3}, tag + "corruption of (3)");
      DoubleConfig c4 = double_config(g);
      c4.f1.components[0].cls = {2, 0};
      v.require(failing(c4) == std::vector<int>{4}, tag + "corruption of (4)");
      DoubleConfig c5 = double_config(g);
      c5.f0.components[0].cls = {1, 2};
      v.require(failing(c5) == std::vector<int>{5}, tag + "corruption of (5)");
    }
  });

  criterion(8, "total defect, handle closed form sweep, cosets, canonical spheres", [&](Tally& v) {
    const auto in = config::parse_defect(config::load(data_dir() / "prop44.json"));
    const TotalDefect t = total_defect(in.manifold, in.sigma0, in.sigma1);
    v.require(t == TotalDefect{0, 2}, "handlebody defect is " + render(t));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> spheres(0, 4);
    std::uniform_int_distribution<int> tori(0, 3);
    std::uniform_int_distribution<int> mult(-3, 3);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 500; ++trial) {
      const std::int64_t p = coin(rng) ? 1 : -1;
      const ManifoldData m{IntersectionForm::diagonal({p}), 2, BoundaryKind::homology_sphere, std::nullopt};
      std::vector<std::int64_t> ks;
      SurfaceConfig s0;
      for (int i = spheres(rng); i > 0; --i) {
        ks.push_back(mult(rng));
        s0.components.push_back(surface(0, {ks.back()}));
      }
      const SurfaceConfig s1 = torus_config(tori(rng));
      const TotalDefect general = total_defect(m, s0, s1);
      const TotalDefect closed = handle_defect_closed_form(p, ks, s1.euler());
      v.require(general == closed, "sweep case " + std::to_string(trial) + ": " + render(general) + " vs " +
                                       render(closed));
      v.require(general.d % 2 == 0, "odd degree in sweep case " + std::to_string(trial));
    }
    v.note("sweep over framings +1 and -1");
    v.require(homology_sphere_coset_check({0, 2}, std::nullopt), "(0,2) rejected");
    v.require(homology_sphere_coset_check({0, 0}, std::nullopt), "(0,0) rejected");
    v.require(!homology_sphere_coset_check({1, 2}, std::nullopt), "odd d accepted");
    v.require(!homology_sphere_coset_check({2, 5}, std::nullopt), "odd h accepted");
    std::vector<std::int64_t> sums;
    for (const auto& c : canonical_sphere_constraint(-1)) sums.push_back(c.sum_k_squared);
    v.require(sums == std::vector<std::int64_t>{1, 3, 5}, "canonical sphere sums for p=-1");
  });

  criterion(9, "sg^k order statistic, monotonicity, empty catalogs, shipped catalog", [&](Tally& v) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
      const MapCatalog cat = random_catalog(rng);
      ExtendedGenus previous(0);
      for (int k = 1; k <= 13; ++k) {
        const ExtendedGenus g = sg_k(cat, k);
        v.require(g == brute_force_sg(cat, k), "catalog " + std::to_string(trial) + " k=" + std::to_string(k));
        v.require(previous <= g, "monotonicity at catalog " + std::to_string(trial));
        previous = g;
      }
    }
    const MapCatalog empty;
    for (int k = 1; k <= 4; ++k) v.require(sg_k(empty, k).is_infinite(), "empty catalog");
    const auto file = config::parse_catalogs(config::load(data_dir() / "thm12.json"));
    v.require(file.catalogs.size() == 2, "shipped catalog has two sides");
    if (file.catalogs.size() == 2) {
      v.require(sg_k(file.catalogs[0].catalog, 1) == ExtendedGenus(0), "sg^1(X1) != 0");
      v.require(sg_k(file.catalogs[1].catalog, 1) >= ExtendedGenus(1), "sg^1(X2) < 1");
      for (const auto& entry : file.catalogs) {
        for (int k = 2; k <= 4; ++k) {
          v.require(sg_k(entry.catalog, k).is_infinite(), entry.catalog.name + ": sg^" + std::to_string(k) + " finite");
        }
      }
    }
  });

  criterion(10, "characteristic class with square 3 sigma for n,m <= 6, j <= 3", [&](Tally& v) {
    int built = 0;
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; m <= 6; ++m) {
        for (int j = 0; j <= 3; ++j) {
          const int sigma = -1 - n + m - j;
          if (sigma % 4 != 0) continue;
          const SigmaClass s = build_sigma_class(n, m, j);
          const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(j) + ")";
          v.require(s.form.is_characteristic(s.cls), tag + " not characteristic");
          v.require(s.form.self_intersection(s.cls) == 3 * sigma, tag + " square");
          ++built;
        }
      }
    }
    v.note(std::to_string(built) + " classes");
  });

  std::cout << (failures == 0 ? "acceptance: all criteria pass" : "acceptance: " + std::to_string(failures) + " failing")
            << "\n";
  return failures == 0 ? 0 : 1;
}
