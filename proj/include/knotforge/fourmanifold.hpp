// Intersection forms and surface configurations in 4-manifolds: fold-map
// existence conditions, total defects of stable framings on the boundary,
// and the sg^k genus invariants of map catalogs.
#pragma once

#include "knotforge/laurent.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdlib>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotforge {

class FourManifoldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using HomologyClass = std::vector<std::int64_t>;

class IntersectionForm {
 public:
  IntersectionForm() = default;

  explicit IntersectionForm(std::vector<std::vector<std::int64_t>> matrix) : m_(std::move(matrix)) {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      if (m_[i].size() != m_.size()) throw FourManifoldError("intersection form: matrix is not square");
    }
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (m_[i][j] != m_[j][i]) throw FourManifoldError("intersection form: matrix is not symmetric");
      }
    }
  }

  static IntersectionForm diagonal(const std::vector<std::int64_t>& entries) {
    std::vector<std::vector<std::int64_t>> m(entries.size(), std::vector<std::int64_t>(entries.size(), 0));
    for (std::size_t i = 0; i < entries.size(); ++i) m[i][i] = entries[i];
    return IntersectionForm(std::move(m));
  }

  static IntersectionForm hyperbolic() { return IntersectionForm({{0, 1}, {1, 0}}); }

  static IntersectionForm direct_sum(const IntersectionForm& a, const IntersectionForm& b) {
    const std::size_t n = a.rank() + b.rank();
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < a.rank(); ++i) {
      for (std::size_t j = 0; j < a.rank(); ++j) m[i][j] = a.m_[i][j];
    }
    for (std::size_t i = 0; i < b.rank(); ++i) {
      for (std::size_t j = 0; j < b.rank(); ++j) m[a.rank() + i][a.rank() + j] = b.m_[i][j];
    }
    return IntersectionForm(std::move(m));
  }

  /// Block notation such as "<-1> + H + 3<-1> + 8<1>"; "0" is the empty form.
  static IntersectionForm parse_blocks(const std::string& text) {
    IntersectionForm out;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& what) {
      return FourManifoldError("form notation: " + what + " at offset " + std::to_string(i));
    };
    auto number = [&](bool allow_sign) {
      const std::size_t begin = i;
      if (allow_sign && i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      return text.substr(begin, i - begin);
    };
    skip();
    if (text.substr(i) == "0" || i == text.size()) return out;
    while (true) {
      skip();
      const std::string count_text = number(false);
      const long long count = count_text.empty() ? 1 : std::stoll(count_text);
      skip();
      IntersectionForm block;
      if (i < text.size() && text[i] == 'H') {
        ++i;
        block = hyperbolic();
      } else if (i < text.size() && text[i] == '<') {
        ++i;
        skip();
        const std::string value = number(true);
        if (value.empty() || value == "+" || value == "-") throw fail("expected an integer");
        skip();
        if (i >= text.size() || text[i] != '>') throw fail("expected '>'");
        ++i;
        block = diagonal({std::stoll(value)});
      } else {
        throw fail("expected 'H' or '<n>'");
      }
      for (long long c = 0; c < count; ++c) out = direct_sum(out, block);
      skip();
      if (i == text.size()) break;
      if (text[i] != '+') throw fail("expected '+'");
      ++i;
    }
    return out;
  }

  std::size_t rank() const { return m_.size(); }
  std::int64_t entry(std::size_t i, std::size_t j) const { return m_.at(i).at(j); }
  const std::vector<std::vector<std::int64_t>>& matrix() const { return m_; }

  std::int64_t pair(const HomologyClass& x, const HomologyClass& y) const {
    check_dim(x);
    check_dim(y);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      for (std::size_t j = 0; j < m_.size(); ++j) s += x[i] * m_[i][j] * y[j];
    }
    return s;
  }
  std::int64_t self_intersection(const HomologyClass& x) const { return pair(x, x); }

  /// x.v = v.v (mod 2) for every basis vector v.
  bool is_characteristic(const HomologyClass& x) const {
    check_dim(x);
    for (std::size_t v = 0; v < m_.size(); ++v) {
      std::int64_t xv = 0;
      for (std::size_t i = 0; i < m_.size(); ++i) xv += x[i] * m_[i][v];
      if (((xv - m_[v][v]) % 2) != 0) return false;
    }
    return true;
  }

  bool is_even() const {
    for (std::size_t i = 0; i < m_.size(); ++i) {
      if (m_[i][i] % 2 != 0) return false;
    }
    return true;
  }

  /// Positive minus negative entries after congruence diagonalization over Q.
  int signature() const {
    const std::size_t n = m_.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = m_[i][j];
    }
    int sig = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k][k] == 0) {
        std::size_t p = k + 1;
        while (p < n && a[p][p] == 0) ++p;
        if (p < n) {
          std::swap(a[k], a[p]);
          for (auto& row : a) std::swap(row[k], row[p]);
        } else {
          std::size_t q = k + 1;
          while (q < n && a[k][q] == 0) ++q;
          if (q == n) continue;  // row k vanishes: null direction
          // e_k += e_q makes the pivot 2 a_kq, nonzero because a_qq = 0.
          for (std::size_t j = 0; j < n; ++j) a[k][j] += a[q][j];
          for (std::size_t i = 0; i < n; ++i) a[i][k] += a[i][q];
        }
      }
      const Rational pivot = a[k][k];
      sig += pivot > 0 ? 1 : -1;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a[i][k] == 0) continue;
        const Rational f = a[i][k] / pivot;
        for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
      }
    }
    return sig;
  }

  std::string render() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m_.size(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m_.size(); ++j) os << (j ? ", " : "") << m_[i][j];
      os << ']';
    }
    os << ']';
    return os.str();
  }

  friend bool operator==(const IntersectionForm&, const IntersectionForm&) = default;

 private:
  void check_dim(const HomologyClass& x) const {
    if (x.size() != m_.size()) {
      throw FourManifoldError("homology class has " + std::to_string(x.size()) + " coordinates; form has rank " +
                              std::to_string(m_.size()));
    }
  }

  std::vector<std::vector<std::int64_t>> m_;
};

enum class BoundaryKind { closed, homology_sphere, other };
enum class FoldKind { definite, indefinite };

inline const char* to_string(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::closed: return "closed";
    case BoundaryKind::homology_sphere: return "homology-sphere";
    case BoundaryKind::other: return "other";
  }
  return "?";
}
inline const char* to_string(FoldKind k) { return k == FoldKind::definite ? "definite" : "indefinite"; }

struct ManifoldData {
  IntersectionForm form;
  int euler = 0;
  BoundaryKind boundary = BoundaryKind::closed;
  std::optional<int> mu_coset;  // 0 or 2
};

struct SurfaceComponent {
  int genus = 0;
  bool orientable = true;
  FoldKind kind = FoldKind::definite;
  HomologyClass cls;
  std::optional<std::int64_t> k_multiple;
  std::string label;

  /// Non-orientable genus counts crosscaps.
  int euler() const { return orientable ? 2 - 2 * genus : 2 - genus; }
};

struct SurfaceConfig {
  std::vector<SurfaceComponent> components;

  bool empty() const { return components.empty(); }
  int euler() const {
    int s = 0;
    for (const auto& c : components) s += c.euler();
    return s;
  }
  HomologyClass total_class(std::size_t rank) const {
    HomologyClass out(rank, 0);
    for (const auto& c : components) {
      for (std::size_t i = 0; i < rank; ++i) out[i] += c.cls.at(i);
    }
    return out;
  }
};

/// Square of a disjoint union of embedded surfaces: the sum of the
/// components' self-intersections, since disjoint components meet nowhere.
inline std::int64_t surface_square(const SurfaceConfig& cfg, const IntersectionForm& form) {
  std::int64_t s = 0;
  for (const auto& c : cfg.components) s += form.self_intersection(c.cls);
  return s;
}

/// Shape checks shared by the operations: class dimensions, genus, k.
inline void validate_config(const SurfaceConfig& cfg, const IntersectionForm& form, const std::string& what) {
  for (std::size_t i = 0; i < cfg.components.size(); ++i) {
    const auto& c = cfg.components[i];
    const std::string where = what + "[" + std::to_string(i) + "]";
    if (c.genus < 0) throw FourManifoldError(where + ": negative genus");
    if (!c.orientable && c.genus < 1) throw FourManifoldError(where + ": non-orientable surface needs genus >= 1");
    if (c.cls.size() != form.rank()) {
      throw FourManifoldError(where + ": class has " + std::to_string(c.cls.size()) + " coordinates, form has rank " +
                              std::to_string(form.rank()));
    }
    if (c.k_multiple) {
      if (form.rank() != 1) throw FourManifoldError(where + ": k multiple needs a rank-1 form");
      if (c.cls[0] != *c.k_multiple) throw FourManifoldError(where + ": class disagrees with k multiple");
    }
  }
}

struct SaekiReport {
  static constexpr int kConditions = 5;
  std::array<bool, kConditions> holds{};
  std::array<std::string, kConditions> detail;

  bool passed() const {
    return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
  }
  std::vector<int> failing() const {
    std::vector<int> out;
    for (int i = 0; i < kConditions; ++i) {
      if (!holds[i]) out.push_back(i + 1);
    }
    return out;
  }
};

/// The five fold-map existence conditions on a closed 4-manifold with
/// singular set F0 (definite) and F1 (indefinite).  The w2 condition is the
/// characteristic-class test, so torsion in homology is out of scope.
inline SaekiReport saeki_check(const ManifoldData& m, const SurfaceConfig& f0, const SurfaceConfig& f1) {
  if (m.boundary != BoundaryKind::closed) throw FourManifoldError("saeki_check: manifold must be closed");
  if (f0.empty() && f1.empty()) throw FourManifoldError("saeki_check: singular set F0 u F1 is empty");
  validate_config(f0, m.form, "F0");
  validate_config(f1, m.form, "F1");
  const std::size_t r = m.form.rank();
  SaekiReport rep;

  const int chi_diff = f0.euler() - f1.euler();
  rep.holds[0] = m.euler == chi_diff;
  rep.detail[0] = "chi(X) = " + std::to_string(m.euler) + ", chi(F0) - chi(F1) = " + std::to_string(chi_diff);

  HomologyClass total = f0.total_class(r);
  const HomologyClass c1 = f1.total_class(r);
  for (std::size_t i = 0; i < r; ++i) total[i] += c1[i];
  rep.holds[1] = m.form.is_characteristic(total);
  rep.detail[1] = std::string("[F0 u F1] ") + (rep.holds[1] ? "is" : "is not") + " characteristic";

  int bad = 0;
  for (const auto& c : f0.components) bad += c.orientable ? 0 : 1;
  rep.holds[2] = bad == 0;
  rep.detail[2] = std::to_string(bad) + " non-orientable component(s) in F0";

  std::string nonzero;
  for (std::size_t i = 0; i < f1.components.size(); ++i) {
    const auto s = m.form.self_intersection(f1.components[i].cls);
    if (s != 0) nonzero += (nonzero.empty() ? "" : ", ") + ("F1[" + std::to_string(i) + "]=" + std::to_string(s));
  }
  rep.holds[3] = nonzero.empty();
  rep.detail[3] = nonzero.empty() ? "every F1 component has self-intersection 0" : "nonzero: " + nonzero;

  const auto f0sq = surface_square(f0, m.form);
  const int sigma = m.form.signature();
  rep.holds[4] = f0sq == 3 * sigma;
  rep.detail[4] = "F0.F0 = " + std::to_string(f0sq) + ", 3 sigma = " + std::to_string(3 * sigma);
  return rep;
}

struct TotalDefect {
  std::int64_t d = 0;
  std::int64_t h = 0;
  friend bool operator==(const TotalDefect&, const TotalDefect&) = default;
};

inline std::string render(const TotalDefect& t) {
  return "(" + std::to_string(t.d) + ", " + std::to_string(t.h) + ")";
}

/// Total defect of the framing induced on the boundary by a map with
/// definite folds along sigma0 and indefinite folds along sigma1:
///   d = chi(X) - chi(sigma0) + chi(sigma1),  h = sigma0.sigma0 - 3 sigma(X).
inline TotalDefect total_defect(const ManifoldData& m, const SurfaceConfig& sigma0, const SurfaceConfig& sigma1) {
  if (m.boundary == BoundaryKind::closed) throw FourManifoldError("total_defect: manifold must have boundary");
  validate_config(sigma0, m.form, "sigma0");
  validate_config(sigma1, m.form, "sigma1");
  for (const auto* cfg : {&sigma0, &sigma1}) {
    for (const auto& c : cfg->components) {
      if (!c.orientable) throw FourManifoldError("total_defect: all components must be orientable");
    }
  }
  const auto s0 = surface_square(sigma0, m.form);
  return TotalDefect{m.euler - sigma0.euler() + sigma1.euler(), s0 - 3 * m.form.signature()};
}

/// Closed form for a single p-framed 2-handle: spheres with multiples k_i in
/// sigma0 and tori in sigma1 give (chi(sigma1) + 2 - chi(sigma0), -3p + p sum k_i^2).
inline TotalDefect handle_defect_closed_form(std::int64_t p, const std::vector<std::int64_t>& sphere_multiples,
                                             int sigma1_euler) {
  std::int64_t ksq = 0;
  for (auto k : sphere_multiples) ksq += k * k;
  const auto chi0 = static_cast<std::int64_t>(2 * sphere_multiples.size());
  return TotalDefect{sigma1_euler + 2 - chi0, -3 * p + p * ksq};
}

/// (d, h) lies in the coset L0 + (0, k) of the lattice L0 spanned by
/// (0, 4) and (-1, 2): with (d, h - k) = x(-1, 2) + y(0, 4), x = -d and
/// 4y = h - k + 2d.
inline bool in_coset(const TotalDefect& t, int k) {
  const std::int64_t r = t.h - k + 2 * t.d;
  return ((r % 4) + 4) % 4 == 0;
}

/// Coset test for framings on a homology sphere.  The degree must be even;
/// when `mu_coset` is absent either coset is accepted.
inline bool homology_sphere_coset_check(const TotalDefect& t, std::optional<int> mu_coset) {
  if (mu_coset && *mu_coset != 0 && *mu_coset != 2) throw FourManifoldError("mu coset must be 0 or 2");
  if (t.d % 2 != 0) return false;
  if (mu_coset) return in_coset(t, *mu_coset);
  return in_coset(t, 0) || in_coset(t, 2);
}

/// Minimal value of 2|d| + |h| over the coset of `t`.
inline std::int64_t coset_min_norm(const TotalDefect& t) {
  const int k = in_coset(t, 0) ? 0 : (in_coset(t, 2) ? 2 : -1);
  if (k < 0) return -1;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  // (d, h) = (-x, 2x + 4y + k); small |x|, |y| suffice.
  for (std::int64_t x = -4; x <= 4; ++x) {
    for (std::int64_t y = -4; y <= 4; ++y) best = std::min(best, 2 * std::abs(x) + std::abs(2 * x + 4 * y + k));
  }
  return best;
}

/// A defect is canonical when it lies in an admissible coset and minimizes
/// 2|d| + |h| there.
inline bool is_canonical(const TotalDefect& t, std::optional<int> mu_coset) {
  if (!homology_sphere_coset_check(t, mu_coset)) return false;
  return 2 * std::abs(t.d) + std::abs(t.h) == coset_min_norm(t);
}

struct SphereConstraint {
  std::int64_t sum_k_squared;
  TotalDefect defect;
};

/// Values s = sum k_i^2 >= 1 for which -3p + p s is one of -2, 0, 2, i.e. the
/// canonical defects (0, -2), (0, 0), (0, 2).
inline std::vector<SphereConstraint> canonical_sphere_constraint(std::int64_t p) {
  if (p == 0) throw FourManifoldError("canonical_sphere_constraint: framing must be nonzero");
  std::vector<SphereConstraint> out;
  // Solutions satisfy |s - 3| <= 2, so a fixed search range is enough.
  for (std::int64_t s = 1; s <= 100; ++s) {
    const std::int64_t h = -3 * p + p * s;
    if (h == -2 || h == 0 || h == 2) out.push_back({s, TotalDefect{0, h}});
  }
  return out;
}

struct SigmaClass {
  HomologyClass cls;
  IntersectionForm form;
  std::int64_t k = 0;
  int signature = 0;
};

/// The class e + 2a + 2k b + sum f_i + sum g_j + sum h_l in
/// <-1> + H + n<-1> + m<1> + j<-1> (basis e, a, b, f.., g.., h..), where
/// -1 - n + m - j = 4k.  It is characteristic with square 3 sigma.
inline SigmaClass build_sigma_class(int n, int m, int j) {
  if (n < 0 || m < 0 || j < 0) throw FourManifoldError("build_sigma_class: counts must be non-negative");
  const int sigma = -1 - n + m - j;
  if (sigma % 4 != 0) {
    throw FourManifoldError("build_sigma_class: signature " + std::to_string(sigma) +
                            " is not divisible by 4; blow up first");
  }
  SigmaClass out;
  out.signature = sigma;
  out.k = sigma / 4;
  std::vector<std::int64_t> diag;
  diag.reserve(static_cast<std::size_t>(n + m + j));
  for (int i = 0; i < n; ++i) diag.push_back(-1);
  for (int i = 0; i < m; ++i) diag.push_back(1);
  for (int i = 0; i < j; ++i) diag.push_back(-1);
  out.form = IntersectionForm::direct_sum(
      IntersectionForm::direct_sum(IntersectionForm::diagonal({-1}), IntersectionForm::hyperbolic()),
      IntersectionForm::diagonal(diag));
  out.cls.assign(out.form.rank(), 1);
  out.cls[1] = 2;
  out.cls[2] = 2 * out.k;
  if (!out.form.is_characteristic(out.cls) || out.form.self_intersection(out.cls) != 3 * sigma ||
      out.form.signature() != sigma) {
    throw std::logic_error("build_sigma_class: identities failed");
  }
  return out;
}

/// Non-negative integer or infinity.
class ExtendedGenus {
 public:
  ExtendedGenus() = default;  // infinity
  explicit ExtendedGenus(int g) : value_(g) {}
  static ExtendedGenus infinity() { return {}; }

  bool is_infinite() const { return !value_.has_value(); }
  int value() const {
    if (!value_) throw std::logic_error("ExtendedGenus: infinite");
    return *value_;
  }
  std::string render() const { return value_ ? std::to_string(*value_) : "inf"; }

  friend bool operator==(const ExtendedGenus&, const ExtendedGenus&) = default;
  friend std::strong_ordering operator<=>(const ExtendedGenus& a, const ExtendedGenus& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }

 private:
  std::optional<int> value_;
};

struct CatalogMap {
  std::string name;
  SurfaceConfig singular_set;
};

struct MapCatalog {
  std::string name;
  std::vector<CatalogMap> maps;
  std::vector<HomologyClass> admissible;
  std::set<FoldKind> allowed{FoldKind::definite, FoldKind::indefinite};

  bool admits(const SurfaceComponent& c) const {
    return allowed.count(c.kind) != 0 && std::find(admissible.begin(), admissible.end(), c.cls) != admissible.end();
  }

  /// Admissible genera of one map, ascending.
  std::vector<int> admissible_genera(const CatalogMap& m) const {
    std::vector<int> out;
    for (const auto& c : m.singular_set.components) {
      if (admits(c)) out.push_back(c.genus);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Minimum over maps of the k-th smallest admissible genus.
inline ExtendedGenus sg_k(const MapCatalog& cat, int k) {
  if (k < 1) throw FourManifoldError("sg_k: k must be at least 1");
  ExtendedGenus best;
  for (const auto& m : cat.maps) {
    const auto g = cat.admissible_genera(m);
    if (static_cast<int>(g.size()) >= k) best = std::min(best, ExtendedGenus(g[static_cast<std::size_t>(k - 1)]));
  }
  return best;
}

/// Minimum over maps of the largest admissible genus.
inline ExtendedGenus sg_plain(const MapCatalog& cat) {
  ExtendedGenus best;
  for (const auto& m : cat.maps) {
    const auto g = cat.admissible_genera(m);
    if (!g.empty()) best = std::min(best, ExtendedGenus(g.back()));
  }
  return best;
}

}  // namespace knotforge
