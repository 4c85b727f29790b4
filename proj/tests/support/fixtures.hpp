// Four-manifold fixtures shared by the unit tests and the acceptance run.
#pragma once

#include "knotforge/fourmanifold.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace knotforge::testing {

inline SurfaceComponent surface(int genus, HomologyClass cls, FoldKind kind = FoldKind::definite, bool orientable = true) {
  SurfaceComponent c;
  c.genus = genus;
  c.cls = std::move(cls);
  c.kind = kind;
  c.orientable = orientable;
  return c;
}

struct DoubleConfig {
  ManifoldData manifold;
  SurfaceConfig f0;
  SurfaceConfig f1;
};

// Double of the (-1)-framed trace: form <-1> + <1>, chi = 4; F0 is a genus g
// surface S and its reflection, F1 one null-homologous genus 1 + 2g surface.
inline DoubleConfig double_config(int g) {
  DoubleConfig c;
  c.manifold.form = IntersectionForm::diagonal({-1, 1});
  c.manifold.euler = 4;
  c.manifold.boundary = BoundaryKind::closed;
  c.f0.components = {surface(g, {1, 0}), surface(g, {0, 1})};
  c.f1.components = {surface(1 + 2 * g, {0, 0}, FoldKind::indefinite)};
  return c;
}

inline std::vector<int> failing(const DoubleConfig& c) { return saeki_check(c.manifold, c.f0, c.f1).failing(); }

inline ExtendedGenus brute_force_sg(const MapCatalog& cat, int k) {
  ExtendedGenus best;
  for (const auto& m : cat.maps) {
    const auto g = cat.admissible_genera(m);
    const int n = static_cast<int>(g.size());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != k) continue;
      int worst = 0;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) worst = std::max(worst, g[static_cast<std::size_t>(i)]);
      }
      best = std::min(best, ExtendedGenus(worst));
    }
  }
  return best;
}

inline MapCatalog random_catalog(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> map_count(0, 5);
  std::uniform_int_distribution<int> comp_count(0, 12);
  std::uniform_int_distribution<int> genus(0, 6);
  std::uniform_int_distribution<int> cls(-2, 2);
  std::bernoulli_distribution coin(0.5);
  MapCatalog cat;
  cat.admissible = {{1}, {-1}};
  if (coin(rng)) cat.allowed = {FoldKind::definite};
  for (int m = map_count(rng); m > 0; --m) {
    CatalogMap map;
    for (int c = comp_count(rng); c > 0; --c) {
      map.singular_set.components.push_back(
          surface(genus(rng), {cls(rng)}, coin(rng) ? FoldKind::definite : FoldKind::indefinite));
    }
    cat.maps.push_back(std::move(map));
  }
  return cat;
}

inline SurfaceConfig torus_config(int tori) {
  SurfaceConfig s;
  for (int i = 0; i < tori; ++i) s.components.push_back(surface(1, {0}, FoldKind::indefinite));
  return s;
}

}  // namespace knotforge::testing
